"""Cross-check of closed forms against the exhaustive oracle for one parameter set."""
from __future__ import annotations

import time
from math import gcd
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .enumerator import (
    CweTable,
    normalize_code,
    printed_final_composition,
    repaired_final_composition,
    c1_case,
    c2_case,
    closed_form_cwe,
    closed_form_cwe_c2,
    collapse_to_weights,
    code_dimension,
    has_printed_repair,
    oracle_from_sweep,
    strategy_cwe,
)
from .errors import BudgetExceeded, CweError
from .field import FIELD_CAP, build_field
from .sums import (
    SumDistribution,
    distribution_from_sweep,
    rank_of_value,
    s_distribution_closed,
    t_distribution_closed,
)
from .sweep import DEFAULT_BUDGET, sweep


@dataclass
class VerificationReport:
    code: str
    p: int
    m: int
    l: int
    field: dict
    case: str
    dim: int
    closed: CweTable | None = None
    strategy: CweTable | None = None
    brute: CweTable | None = None
    weight_census_match: bool | None = None
    dist_direct: SumDistribution | None = None
    dist_closed: SumDistribution | None = None
    rank_census: dict[int, int] = field(default_factory=dict)
    repairs: list[dict] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    budget_exceeded: bool = False
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def table_match(self) -> bool:
        return self.closed is not None and self.closed == self.brute

    @property
    def strategy_match(self) -> bool:
        return self.strategy is not None and self.strategy == self.brute

    @property
    def distribution_match(self) -> bool:
        return self.dist_direct is not None and self.dist_direct == self.dist_closed

    @property
    def match(self) -> bool:
        return (
            not self.errors
            and self.table_match
            and self.strategy_match
            and self.distribution_match
            and bool(self.weight_census_match)
        )

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "code": self.code,
            "p": self.p,
            "m": self.m,
            "l": self.l,
            "field": self.field,
            "case": self.case,
            "dim": self.dim,
            "match": self.match,
            "checks": {
                "closed_vs_brute": self.table_match,
                "strategy_vs_brute": self.strategy_match,
                "distribution_direct_vs_closed": self.distribution_match,
                "weight_census": self.weight_census_match,
            },
            "table_diff": self.closed.diff(self.brute) if self.closed and self.brute else [],
            "distribution_diff": (
                self.dist_direct.diff(self.dist_closed) if self.dist_direct and self.dist_closed else []
            ),
            "rank_census": {str(r): c for r, c in sorted(self.rank_census.items())},
            "repairs": self.repairs,
            "errors": self.errors,
            "closed": self.closed.to_json() if self.closed else None,
            "brute": self.brute.to_json() if self.brute else None,
        }
        if self.brute is not None:
            out["weights"] = collapse_to_weights(self.brute).to_json()
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def _repair_record(p: int, m: int, l: int, brute: CweTable | None) -> dict:
    d = gcd(m, l)
    printed = closed_form_cwe_c2(p, m, l, repaired=False)
    repaired = closed_form_cwe_c2(p, m, l, repaired=True)
    typo = printed_final_composition(p, m, d)
    fixed = repaired_final_composition(p, m, d)
    return {
        "case": "s even, d odd",
        "term": "final term, per-symbol exponent",
        "printed": f"p^(m-1) - p^((m+2d-2)/2) = {typo[1]}",
        "repaired": f"p^(m-1) + p^((m+2d-2)/2) = {fixed[1]}",
        "printed_composition": list(typo),
        "repaired_composition": list(fixed),
        "printed_row_sum": sum(typo),
        "required_row_sum": p**m - 1,
        "printed_matches_oracle": None if brute is None else printed == brute,
        "repaired_matches_oracle": None if brute is None else repaired == brute,
    }


def verify(
    p: int,
    m: int,
    l: int,
    code: str,
    poly: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    cap: int = FIELD_CAP,
) -> VerificationReport:
    """Run closed-form, strategy and brute-force paths and compare them.

    Parameter errors raise; failures during the computation are recorded in
    ``errors`` so the report is always returned.
    """
    code = normalize_code(code)
    ctx = build_field(p, m, poly, cap=cap)
    case = c1_case(m, l) if code == "C1" else c2_case(m, l)
    rep = VerificationReport(code, p, m, l, ctx.descriptor(), case, code_dimension(m, l, code))

    t0 = time.perf_counter()
    try:
        rep.closed = closed_form_cwe(p, m, l, code)
        rep.strategy = strategy_cwe(p, m, l, code)
        rep.dist_closed = s_distribution_closed(p, m, l) if code == "C1" else t_distribution_closed(p, m, l)
    except CweError as exc:
        rep.errors.append(f"{type(exc).__name__}: {exc}")
    rep.timings["closed"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        res = sweep(ctx, l, code, budget=budget, workers=workers)
        oracle = oracle_from_sweep(ctx, l, code, res)
        rep.brute = oracle.table
        rep.weight_census_match = collapse_to_weights(oracle.table) == oracle.weight_census
        rep.dist_direct = distribution_from_sweep(ctx, l, res)
        census: Counter = Counter()
        for value, freq in rep.dist_direct.entries:
            census[rank_of_value(m, value)] += freq
        rep.rank_census = dict(census)
    except BudgetExceeded as exc:
        rep.budget_exceeded = True
        rep.errors.append(f"BudgetExceeded: {exc}")
    except CweError as exc:
        rep.errors.append(f"{type(exc).__name__}: {exc}")
    rep.timings["brute"] = time.perf_counter() - t0

    if has_printed_repair(m, l, code):
        rep.repairs.append(_repair_record(p, m, l, rep.brute))
    return rep
