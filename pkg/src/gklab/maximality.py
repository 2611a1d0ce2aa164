"""Hasse-Weil bookkeeping: genus plus point count gives a maximality verdict."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from .curves import CurveParams, emit_system, validate
from .genus import closed_form_genus
from .places import BudgetExceeded, ReducibleTowerError, count_places, hurwitz

MAXIMAL = 'maximal'
NOT_MAXIMAL = 'not-maximal'
BOUND_EXCEEDED = 'bound-exceeded'
FORMULA_ONLY = 'formula-only'
REDUCIBLE = 'reducible'


def hasse_weil_bound(q: int, g: int) -> int:
    return q * q + 1 + 2 * g * q


@dataclass
class MaximalityReport:
    family: str
    params: dict
    n: int
    q: int
    genus: int
    genus_oracle: int | None
    N1: int | None
    bound: int
    verdict: str
    elapsed_ms: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> MaximalityReport:
        return cls(**data)

    @property
    def consistent(self) -> bool:
        """Formula and oracle agree (when both exist) and the bound holds."""
        if self.genus_oracle is not None and self.genus_oracle != self.genus:
            return False
        return self.verdict != BOUND_EXCEEDED


def verify_maximal(params: CurveParams, count: bool = True,
                   budget_ms: float | None = None) -> MaximalityReport:
    """Closed-form genus, Hurwitz genus and (optionally) the exhaustive count.

    When no closed form applies (proper divisors e), the Hurwitz genus is used
    as the genus.  A reducible emitted system gets verdict ``reducible``; its
    genus fields then hold the formal values.
    """
    start = time.perf_counter()
    params = validate(params)
    system = emit_system(params)
    formula = closed_form_genus(params)
    reducible = False
    try:
        oracle = hurwitz(system).genus
    except ReducibleTowerError:
        reducible = True
        oracle = hurwitz(system, check_irreducible=False).genus
    genus = formula if formula is not None else oracle
    q = params.q
    bound = hasse_weil_bound(q, genus)
    N1 = None
    verdict = FORMULA_ONLY
    if count:
        try:
            N1 = count_places(system, budget_ms=budget_ms).total
        except BudgetExceeded:
            N1 = None
    if reducible:
        verdict = REDUCIBLE
    elif N1 is not None:
        if N1 == bound:
            verdict = MAXIMAL
        elif N1 > bound:
            verdict = BOUND_EXCEEDED
        else:
            verdict = NOT_MAXIMAL
    elapsed = (time.perf_counter() - start) * 1000
    return MaximalityReport(params.family.value, params.as_dict(), params.n, q, genus,
                            oracle, N1, bound, verdict, round(elapsed, 3))
