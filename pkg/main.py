"""
Main Application Module

This module sets up the FastAPI application and dispatches the command line.

Dependencies:
    - fastapi: For creating the API
    - fastapi.middleware.cors: For CORS middleware
    - slowapi: For rate limiting
    - src.cli: The command line front end

Routers:
    - structures: Validation, checks, constructions and decompositions

Routes:
    - GET /: Root endpoint returning a welcome message

Usage:
    ``python main.py <command> ...`` runs one command; ``python main.py serve`` starts the
    API server.

"""
import sys

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from slowapi import _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded

from src import cli
from src.routers import structures
from src.utils.limiter import limiter

app = FastAPI(title="sepsys")

app.include_router(structures.router, prefix="/api", tags=["structures"])

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)


@app.get("/")
def read_root():
    """
    Root endpoint that returns a welcome message.

    :return: A dictionary containing a welcome message
    :rtype: dict

    """
    return {"message": "Finite separation systems and lattices"}


if __name__ == '__main__':
    sys.exit(cli.main())
