"""
Structure Endpoints

HTTP access to the command runners. Every route takes a document (plus options) and
returns the runner's exit code, report, and output document or DOT text.

Dependencies:
    - FastAPI modules for routing and request/response handling.
    - src.services.commands for the shared command runners.
    - Utilities for rate-limiting requests.

Routes:
    - POST /validate: Check every structural law of a document.
    - POST /check: Submodularity report (local, in host, or order-induced).
    - POST /depgraph: Dependency digraph with an optional cycle.
    - POST /dm-complete: Dedekind-MacNeille completion.
    - POST /birkhoff: Birkhoff representation.
    - POST /double: The doubled universe of a lattice.
    - POST /decompose: Decomposition into corner-closed parts.
    - GET /paper-demo: The six-point bipartition example, end to end.

"""
import logging

from fastapi import APIRouter, HTTPException, Request, status

from src.schemas import CheckRequest, CommandOut, DecomposeRequest, DepgraphRequest, Document
from src.services import commands
from src.utils.errors import SepsysError
from src.utils.limiter import api_limit

logger = logging.getLogger(__name__)

router = APIRouter()


def _respond(run, *args) -> CommandOut:
    """
    Run a command and wrap its outcome.

    :raises HTTPException: 400 when the input is invalid.
    """
    try:
        outcome = run(*args)
    except SepsysError as e:
        logger.error(f"{run.__name__} rejected its input: {e}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=commands.describe(e))
    return CommandOut(
        exit_code=outcome.code,
        report=outcome.report.model_dump(mode="json", exclude_none=True),
        document=outcome.document,
        dot=outcome.dot,
    )


@router.post("/validate", response_model=CommandOut)
@api_limit
def validate_document(request: Request, document: Document):
    """
    Validate a document.

    :param request: The HTTP request object.
    :type request: Request
    :param document: The structure to audit.
    :type document: Document
    :return: Exit code 0 when valid, 1 with the defects otherwise.
    :rtype: CommandOut
    """
    return _respond(commands.run_validate, document)


@router.post("/check", response_model=CommandOut)
@api_limit
def check_document(request: Request, body: CheckRequest):
    return _respond(commands.run_check, body.document, body.mode, body.symmetric)


@router.post("/depgraph", response_model=CommandOut)
@api_limit
def depgraph(request: Request, body: DepgraphRequest):
    return _respond(commands.run_depgraph, body.document, body.find_cycle)


@router.post("/dm-complete", response_model=CommandOut)
@api_limit
def dm_complete(request: Request, document: Document):
    return _respond(commands.run_dm_complete, document)


@router.post("/birkhoff", response_model=CommandOut)
@api_limit
def birkhoff(request: Request, document: Document):
    return _respond(commands.run_birkhoff, document)


@router.post("/double", response_model=CommandOut)
@api_limit
def double(request: Request, document: Document):
    return _respond(commands.run_double, document)


@router.post("/decompose", response_model=CommandOut)
@api_limit
def decompose(request: Request, body: DecomposeRequest):
    """
    Decompose the document's subsystem.

    :param request: The HTTP request object.
    :type request: Request
    :param body: The document, the mode (``triple`` or ``classes``) and whether a triple
        is required on the embedding branch.
    :type body: DecomposeRequest
    :return: The decomposition report.
    :rtype: CommandOut
    :raises HTTPException: If the subsystem is too small, not submodular, or the host
        is not distributive.
    """
    return _respond(commands.run_decompose, body.document, body.mode, body.require_triple)


@router.get("/paper-demo", response_model=CommandOut)
@api_limit
def paper_demo(request: Request):
    return _respond(commands.run_paper_demo)
