"""
Order-Induced Submodularity Module

Decides exactly whether a subset ``P`` of a lattice equals ``{a : f(a) < k}`` for a
nonnegative submodular ``f`` (optionally an order function, ``f(s) = f(s*)``).

Dependencies:
    - fractions.Fraction: every value and threshold is exact
    - src.services.simplex: the exact LP solver

Functions:
    - find_inducing_function: the decision procedure, returning a witness or a
      certificate of impossibility
    - verify_witness / verify_certificate: independent exhaustive re-checks
    - symmetrize_sum / symmetrize_mean: order functions from submodular functions
    - lift_witness_to_universe / restrict_witness_to_lattice: move witnesses between a
      lattice, a universe on it and its doubled universe

With ``k = 1`` the strict system is relaxed by a slack ``delta``: maximise ``delta``
subject to ``f >= 0``, submodularity on every incomparable pair, ``f(s) + delta <= 1``
on P, ``f(a) >= 1`` off P and ``delta <= 1``. P is order-induced iff the optimum is
positive.

"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from src.operations.order import require_lattice
from src.operations.submodularity import function_violations
from src.services.simplex import OPTIMAL, maximize_by_dual
from src.structures.poset import FinitePoset
from src.structures.separations import SeparationSystem
from src.utils.bits import full_mask
from src.utils.errors import (
    InvalidStructure,
    InvolutionRequired,
    NotSubmodularInput,
    ProofPreconditionUnmet,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InducedWitness:
    values: tuple[Fraction, ...]
    threshold: Fraction
    symmetric: bool = False

    def members(self) -> int:
        """Mask of ``{a : f(a) < k}``."""
        return sum(1 << a for a, v in enumerate(self.values) if v < self.threshold)

    def scaled(self, factor) -> "InducedWitness":
        factor = Fraction(factor)
        return InducedWitness(tuple(v * factor for v in self.values), self.threshold * factor, self.symmetric)


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """
    Multipliers ``y >= 0`` of the rows ``A x <= b`` with ``A^T y >= e_delta`` and
    ``b.y <= 0``; together they show ``delta <= 0`` on the whole feasible region.
    """
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    multipliers: tuple[Fraction, ...]
    delta_column: int


@dataclass(frozen=True)
class NotOrderInduced:
    certificate: InfeasibilityCertificate
    optimum: Fraction = Fraction(0)


@dataclass
class InducingSystem:
    """The slack LP in the variables ``classes`` (one per element or per involution orbit) plus delta."""
    classes: list[tuple[int, ...]]
    rows: list[tuple[Fraction, ...]] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)

    @property
    def delta_column(self) -> int:
        return len(self.classes)


def _variable_classes(n: int, inv: Optional[Sequence[int]]) -> list[tuple[int, ...]]:
    if inv is None:
        return [(a,) for a in range(n)]
    seen, classes = set(), []
    for a in range(n):
        if a not in seen:
            orbit = tuple(sorted({a, inv[a]}))
            seen.update(orbit)
            classes.append(orbit)
    return classes


def inducing_system(lattice: FinitePoset, subset: int, inv: Optional[Sequence[int]] = None) -> InducingSystem:
    """
    Assemble the slack LP for ``subset``, keeping one row per left-hand side (the one
    with the smallest bound); with ``inv`` the values are tied along the involution orbits.
    """
    join, meet = require_lattice(lattice)
    n = lattice.n
    classes = _variable_classes(n, inv)
    var = [0] * n
    for j, orbit in enumerate(classes):
        for a in orbit:
            var[a] = j
    width = len(classes) + 1
    system = InducingSystem(classes)
    position = {}

    def add(coefs: dict, rhs: int):
        row = tuple(Fraction(coefs.get(j, 0)) for j in range(width))
        if not any(row):
            return
        if row in position:
            i = position[row]
            system.rhs[i] = min(system.rhs[i], Fraction(rhs))
            return
        position[row] = len(system.rows)
        system.rows.append(row)
        system.rhs.append(Fraction(rhs))

    for a in range(n):
        for b in range(a + 1, n):
            if lattice.comparable(a, b):
                continue
            coefs = {}
            for x, sign in ((int(join[a, b]), 1), (int(meet[a, b]), 1), (a, -1), (b, -1)):
                coefs[var[x]] = coefs.get(var[x], 0) + sign
            add(coefs, 0)
    delta = system.delta_column
    for j, orbit in enumerate(classes):
        for a in orbit:
            if subset >> a & 1:
                add({j: 1, delta: 1}, 1)
            else:
                add({j: -1}, -1)
    add({delta: 1}, 1)
    return system


def find_inducing_function(
    lattice: FinitePoset,
    subset: int,
    symmetric: bool = False,
    inv: Optional[Sequence[int]] = None,
) -> Union[InducedWitness, NotOrderInduced]:
    """
    Decide whether ``subset`` is induced by a submodular function on ``lattice``.

    :param lattice: A lattice L.
    :type lattice: FinitePoset
    :param subset: Mask of P over the elements of L.
    :type subset: int
    :param symmetric: Require an order function ``f(s) = f(s*)``.
    :type symmetric: bool
    :param inv: The involution (needed when ``symmetric`` is set).
    :type inv: Optional[Sequence[int]]
    :return: A verified witness with ``k = 1``, or :class:`NotOrderInduced` carrying a
        dual certificate.
    :rtype: Union[InducedWitness, NotOrderInduced]
    :raises NotALattice: If ``lattice`` is not a lattice.
    :raises InvolutionRequired: If ``symmetric`` is set without an involution.
    :raises InvalidStructure: If ``inv`` is not an order-reversing involution.
    """
    require_lattice(lattice)
    if symmetric and inv is None:
        raise InvolutionRequired("an order function needs the involution of the universe")
    if symmetric:
        defects = SeparationSystem(lattice, tuple(inv)).defects()
        if defects:
            raise InvalidStructure(defects[0])
    n = lattice.n
    if subset == 0:
        return InducedWitness(tuple(Fraction(1) for _ in range(n)), Fraction(1), symmetric)
    if subset == full_mask(n):
        return InducedWitness(tuple(Fraction(0) for _ in range(n)), Fraction(1), symmetric)

    system = inducing_system(lattice, subset, inv if symmetric else None)
    objective = [0] * system.delta_column + [1]
    result = maximize_by_dual(system.rows, system.rhs, objective)
    if result.status != OPTIMAL:
        logger.error(f"Inducing LP ended with status {result.status}")
        raise ProofPreconditionUnmet(f"the inducing LP is always feasible and bounded, got {result.status}")
    logger.info(
        f"Inducing LP: {len(system.rows)} rows, {system.delta_column + 1} columns, "
        f"{result.pivots} pivots, optimum {result.value}"
    )
    if result.value > 0:
        values = [Fraction(0)] * n
        for j, orbit in enumerate(system.classes):
            for a in orbit:
                values[a] = result.x[j]
        witness = InducedWitness(tuple(values), Fraction(1), symmetric)
        problems = verify_witness(lattice, subset, witness, inv)
        if problems:
            logger.error(f"LP witness failed verification: {problems[0]}")
            raise ProofPreconditionUnmet(problems[0])
        return witness
    certificate = InfeasibilityCertificate(
        tuple(system.rows), tuple(system.rhs), tuple(result.duals), system.delta_column
    )
    return NotOrderInduced(certificate, result.value)


def verify_witness(
    lattice: FinitePoset,
    subset: int,
    witness: InducedWitness,
    inv: Optional[Sequence[int]] = None,
) -> list[str]:
    """
    Re-check a witness by exhaustive scan.

    :return: One line per violated condition; empty when the witness is valid.
    :rtype: list[str]
    """
    labels = lattice.labels
    values = witness.values
    if len(values) != lattice.n:
        return [f"witness has {len(values)} values for {lattice.n} elements"]
    problems = []
    if witness.threshold <= 0:
        problems.append(f"threshold {witness.threshold} is not positive")
    for a, v in enumerate(values):
        if v < 0:
            problems.append(f"f({labels[a]}) = {v} is negative")
        inside = bool(subset >> a & 1)
        if inside and not v < witness.threshold:
            problems.append(f"f({labels[a]}) = {v} >= {witness.threshold} but {labels[a]} is a member")
        if not inside and v < witness.threshold:
            problems.append(f"f({labels[a]}) = {v} < {witness.threshold} but {labels[a]} is not a member")
    join, meet = lattice.bound_tables
    for a, b in function_violations(join, meet, values):
        problems.append(f"not submodular at {labels[a]}, {labels[b]}")
    if witness.symmetric:
        if inv is None:
            problems.append("symmetric witness cannot be checked without the involution")
        else:
            for a, v in enumerate(values):
                if v != values[inv[a]]:
                    problems.append(f"f({labels[a]}) = {v} differs from f({labels[inv[a]]}) = {values[inv[a]]}")
    return problems


def verify_certificate(certificate: InfeasibilityCertificate) -> list[str]:
    """Exact re-check of ``y >= 0``, ``A^T y >= e_delta`` and ``b.y <= 0``."""
    problems = []
    y = certificate.multipliers
    if len(y) != len(certificate.rows):
        return [f"{len(y)} multipliers for {len(certificate.rows)} rows"]
    if any(v < 0 for v in y):
        problems.append("negative multiplier")
    width = certificate.delta_column + 1
    for j in range(width):
        total = sum((row[j] * v for row, v in zip(certificate.rows, y) if v), Fraction(0))
        need = 1 if j == certificate.delta_column else 0
        if total < need:
            problems.append(f"column {j}: combination {total} < {need}")
    bound = sum((b * v for b, v in zip(certificate.rhs, y)), Fraction(0))
    if bound > 0:
        problems.append(f"combined right-hand side {bound} is positive")
    return problems


def _require_submodular(system: SeparationSystem, values: Sequence[Fraction]) -> tuple:
    join, meet = system.poset.bound_tables
    bad = function_violations(join, meet, values)
    if bad:
        a, b = bad[0]
        logger.error(f"Valuation is not submodular at {system.labels[a]}, {system.labels[b]}")
        raise NotSubmodularInput(f"valuation is not submodular at {system.labels[a]}, {system.labels[b]}")
    return tuple(Fraction(v) for v in values)


def symmetrize_sum(system: SeparationSystem, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """
    ``s -> f(s) + f(s*)``.

    :raises NotSubmodularInput: If ``values`` is not submodular.
    """
    f = _require_submodular(system, values)
    return tuple(f[s] + f[system.star(s)] for s in range(system.n))


def symmetrize_mean(system: SeparationSystem, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``s -> (f(s) + f(s*)) / 2``."""
    f = _require_submodular(system, values)
    return tuple((f[s] + f[system.star(s)]) / 2 for s in range(system.n))


def lift_witness_to_universe(system: SeparationSystem, witness: InducedWitness) -> InducedWitness:
    """
    Turn a witness for an involution-closed subset of the lattice of a universe into an
    order-function witness: ``f(s) + f(s*)`` with threshold ``2k``.
    """
    values = symmetrize_sum(system, witness.values)
    return InducedWitness(values, 2 * witness.threshold, True)


def restrict_witness_to_lattice(witness: InducedWitness, size: int) -> InducedWitness:
    """Restrict a witness on ``double(L)`` to the lower copy of ``L`` (its first ``size`` elements)."""
    return InducedWitness(witness.values[:size], witness.threshold, False)
