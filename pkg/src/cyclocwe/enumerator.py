"""Complete weight enumerators of the trace codes

    C1 = {(Tr(a x^(p^l+1)))_{x != 0}},   C2 = {(Tr(a x^(p^l+1) + b x^2))_{x != 0}}

computed three ways: the case-by-case closed forms, the generic strategy
(sum value -> composition) applied to the closed sum distributions, and an
exhaustive codeword sweep.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Tuple

import numpy as np

from .cyclotomic import GaussTypeValue, legendre
from .errors import DegeneracyMismatch, NonIntegralComposition, ParameterError
from .field import FieldContext
from .sums import (
    gauss_sum_closed,
    k_counts,
    nu2,
    r_counts,
    rank_of_value,
    s_distribution_closed,
    t_distribution_closed,
)
from .sweep import DEFAULT_BUDGET, SweepResult, check_exponent, sweep

Composition = Tuple[int, ...]


def normalize_code(code: str) -> str:
    c = code.upper()
    if c not in ("C1", "C2"):
        raise ParameterError(f"unknown code {code!r}; expected C1 or C2")
    return c


def code_dimension(m: int, l: int, code: str) -> int:
    """Dimension over F_p: m/2 or m for C1, 3m/2 or 2m for C2."""
    code = normalize_code(code)
    if code == "C1":
        return m // 2 if m == 2 * l else m
    return 3 * m // 2 if m == 2 * l else 2 * m


def check_composition(comp: Composition, p: int, n: int) -> None:
    if len(comp) != p or any(k < 0 for k in comp) or sum(comp) != n:
        raise ValueError(f"invalid composition {comp} for p={p}, n={n}")


@dataclass
class CweTable:
    code: str
    p: int
    m: int
    l: int
    dim: int
    entries: Dict[Composition, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return self.p**self.m - 1

    @property
    def zero_word(self) -> Composition:
        return (self.length,) + (0,) * (self.p - 1)

    def total(self) -> int:
        return sum(self.entries.values())

    def validate(self) -> None:
        """Raise ValueError unless the table satisfies the enumerator invariants."""
        n = self.length
        for comp, freq in self.entries.items():
            check_composition(comp, self.p, n)
            if freq <= 0:
                raise ValueError(f"non-positive frequency {freq} at {comp}")
        if self.entries.get(self.zero_word) != 1:
            raise ValueError("the zero word must appear exactly once")
        if self.total() != self.p**self.dim:
            raise ValueError(f"frequencies sum to {self.total()}, expected {self.p}^{self.dim}")

    def sorted_entries(self) -> list[tuple[Composition, int]]:
        return sorted(self.entries.items(), reverse=True)

    def diff(self, other: CweTable) -> list[dict]:
        out = []
        for comp in sorted(set(self.entries) | set(other.entries), reverse=True):
            a, b = self.entries.get(comp, 0), other.entries.get(comp, 0)
            if a != b:
                out.append({"composition": list(comp), "left": a, "right": b})
        return out

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "p": self.p,
            "m": self.m,
            "l": self.l,
            "dim": self.dim,
            "entries": [{"composition": list(c), "freq": f} for c, f in self.sorted_entries()],
        }

    def to_text(self) -> str:
        monomials = []
        for comp, freq in self.sorted_entries():
            powers = [f"w{j}^{k}" for j, k in enumerate(comp) if k]
            monomials.append("*".join([str(freq), *powers]))
        return " + ".join(monomials)


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def min_distance(self) -> int | None:
        return next((w for w, a in enumerate(self.counts) if w and a), None)

    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {
            "min_distance": self.min_distance,
            "nonzero": {str(w): a for w, a in enumerate(self.counts) if a},
        }


def collapse_to_weights(table: CweTable) -> WeightDistribution:
    n = table.length
    counts = [0] * (n + 1)
    for comp, freq in table.entries.items():
        counts[n - comp[0]] += freq
    return WeightDistribution(tuple(counts))


# -- the general strategy -------------------------------------------------------

def strategy_composition(p: int, m: int, sum_value: GaussTypeValue, rank: int) -> Composition:
    """Composition of a codeword whose quadratic form has ``rank`` and sum ``sum_value``.

    Counts solutions of Tr(f(x)) = rho over x != 0 for each rho in F_p.
    """
    if rank < 1:
        raise ParameterError("rank must be at least 1")
    base = p ** (m - 1)
    if rank % 2 == 0:
        if not sum_value.is_integer():
            raise NonIntegralComposition(
                f"even rank {rank} needs a rational sum, got {sum_value.render(p)}"
            )
        s = sum_value.integer_value(p)
        if s % p:
            raise NonIntegralComposition(f"{s} is not divisible by {p}")
        return (base - 1 + (p - 1) * (s // p),) + (base - s // p,) * (p - 1)

    prod = sum_value * gauss_sum_closed(p, 1)
    if not prod.is_integer() or prod.half_exp < 2:
        raise NonIntegralComposition(
            f"odd rank {rank}: {sum_value.render(p)} * G is {prod.render(p)}, not in p*Z"
        )
    shift = prod.integer_value(p) // p
    return (base - 1,) + tuple(base + legendre(rho, p) * shift for rho in range(1, p))


def _divide_degeneracy(raw: Counter, p: int, tuples: int, dim: int, zero: Composition) -> dict:
    """Turn counts over coefficient tuples into counts over distinct codewords."""
    factor, rem = divmod(tuples, p**dim)
    if rem:
        raise DegeneracyMismatch(f"{tuples} tuples is not a multiple of {p}^{dim}")
    if raw.get(zero, 0) != factor:
        raise DegeneracyMismatch(
            f"{raw.get(zero, 0)} tuples give the zero word; dimension {dim} needs {factor}"
        )
    out = {}
    for comp, f in raw.items():
        if f % factor:
            raise DegeneracyMismatch(f"frequency {f} of {comp} is not divisible by {factor}")
        if f:
            out[comp] = f // factor
    return out


def strategy_cwe(p: int, m: int, l: int, code: str) -> CweTable:
    """Enumerator from the closed sum distribution, one strategy composition per value."""
    code = normalize_code(code)
    dist = s_distribution_closed(p, m, l) if code == "C1" else t_distribution_closed(p, m, l)
    n = p**m - 1
    zero = (n,) + (0,) * (p - 1)
    raw: Counter = Counter({zero: 1})
    for value, freq in dist.entries:
        rank = rank_of_value(m, value)
        raw[zero if rank == 0 else strategy_composition(p, m, value, rank)] += freq
    dim = code_dimension(m, l, code)
    tuples = p**m if code == "C1" else p ** (2 * m)
    return CweTable(code, p, m, l, dim, _divide_degeneracy(raw, p, tuples, dim, zero))


# -- closed forms, case by case --------------------------------------------------

def _flat(p: int, m: int, shift: int) -> Composition:
    """k_rho = p^(m-1) + shift for every rho != 0, k_0 from the row sum."""
    base = p ** (m - 1)
    return (base - 1 - (p - 1) * shift,) + (base + shift,) * (p - 1)


def _eta(p: int, m: int, shift: int) -> Composition:
    """k_0 = p^(m-1) - 1, k_rho = p^(m-1) + legendre(rho) * shift."""
    base = p ** (m - 1)
    return (base - 1,) + tuple(base + legendre(rho, p) * shift for rho in range(1, p))


def c1_case(m: int, l: int) -> str:
    check_exponent(m, l)
    vm, vl = nu2(m), nu2(l)
    if m == 2 * l:
        return "m=2l"
    if vm == 0:
        return "v2(m)=0<=v2(l)"
    if vm <= vl:
        return "1<=v2(m)<=v2(l)"
    if vm == vl + 1:
        return "v2(m)=v2(l)+1"
    return "v2(m)>v2(l)+1"


def c2_case(m: int, l: int) -> str:
    check_exponent(m, l)
    d = gcd(m, l)
    s = m // d
    if m == 2 * l:
        return "m=2l, d odd" if d % 2 else "m=2l, d even"
    return f"s {'odd' if s % 2 else 'even'}, d {'odd' if d % 2 else 'even'}"


def _table(code, p, m, l, terms) -> CweTable:
    entries: Counter = Counter({(p**m - 1,) + (0,) * (p - 1): 1})
    for freq, comp in terms:
        entries[comp] += freq
    return CweTable(code, p, m, l, code_dimension(m, l, code), dict(entries))


def closed_form_cwe_c1(p: int, m: int, l: int) -> CweTable:
    check_exponent(m, l)
    case = c1_case(m, l)
    n = p**m - 1
    d = gcd(m, l)
    if case == "m=2l":
        terms = [(p ** (m // 2) - 1, _flat(p, m, p ** ((m - 2) // 2)))]
    elif case == "v2(m)=0<=v2(l)":
        x = p ** ((m - 1) // 2)
        terms = [(n // 2, _eta(p, m, x)), (n // 2, _eta(p, m, -x))]
    elif case == "1<=v2(m)<=v2(l)":
        x = p ** ((m - 2) // 2)
        terms = [(n // 2, _flat(p, m, -x)), (n // 2, _flat(p, m, x))]
    else:
        small, big = p ** ((m - 2) // 2), p ** ((m + 2 * d - 2) // 2)
        many, few = p**d * n // (p**d + 1), n // (p**d + 1)
        if case == "v2(m)=v2(l)+1":
            terms = [(many, _flat(p, m, small)), (few, _flat(p, m, -big))]
        else:
            terms = [(many, _flat(p, m, -small)), (few, _flat(p, m, big))]
    return _table("C1", p, m, l, terms)


def printed_final_composition(p: int, m: int, d: int) -> Composition:
    """The s even, d odd final term exactly as printed: k_rho = p^(m-1) - p^((m+2d-2)/2)."""
    base, y = p ** (m - 1), p ** ((m + 2 * d - 2) // 2)
    return (base - 1 - (p - 1) * y,) + (base - y,) * (p - 1)


def repaired_final_composition(p: int, m: int, d: int) -> Composition:
    """The same term with k_rho = p^(m-1) + p^((m+2d-2)/2), the only row-sum-consistent sign."""
    return _flat(p, m, p ** ((m + 2 * d - 2) // 2))


def closed_form_cwe_c2(p: int, m: int, l: int, repaired: bool = True) -> CweTable:
    """C2 enumerator.  ``repaired=False`` reproduces the printed s even, d odd
    form whose last term breaks the row-sum identity."""
    check_exponent(m, l)
    case = c2_case(m, l)
    n = p**m - 1
    d = gcd(m, l)
    p_m1 = p ** ((m - 1) // 2)
    p_m2 = p ** ((m - 2) // 2) if m >= 2 else 0

    if case.startswith("m=2l"):
        h = p ** (m // 2)
        terms = [
            (h * n // 2, _flat(p, m, -p_m2)),
            (h * (h - 1) ** 2 // 2, _flat(p, m, p_m2)),
        ]
        if d % 2:
            x = p ** ((3 * m - 2) // 4)
            terms += [(n // 2, _eta(p, m, x)), (n // 2, _eta(p, m, -x))]
        else:
            x = p ** ((3 * m - 4) // 4)
            terms += [(n // 2, _flat(p, m, -x)), (n // 2, _flat(p, m, x))]
        return _table("C2", p, m, l, terms)

    s = m // d
    mid_odd = p ** ((m + d - 1) // 2)   # used when m + d is odd
    mid_even = p ** ((m + d - 2) // 2)  # used when m + d is even
    top_odd = p ** ((m + 2 * d - 1) // 2)
    top_even = p ** ((m + 2 * d - 2) // 2)

    if s % 2:
        r1, r2, r3, r4 = r_counts(p, m, d)
        if d % 2:
            terms = [
                (r1, _eta(p, m, p_m1)), (r1, _eta(p, m, -p_m1)),
                (r2, _flat(p, m, -mid_even)), (r3, _flat(p, m, mid_even)),
                (r4, _eta(p, m, top_odd)), (r4, _eta(p, m, -top_odd)),
            ]
        else:
            terms = [
                (r1, _flat(p, m, -p_m2)), (r1, _flat(p, m, p_m2)),
                (r2, _flat(p, m, -mid_even)), (r3, _flat(p, m, mid_even)),
                (r4, _flat(p, m, -top_even)), (r4, _flat(p, m, top_even)),
            ]
    else:
        k1, k2, k3, k4, k5 = k_counts(p, m, d)
        terms = [(k1, _flat(p, m, -p_m2)), (k2, _flat(p, m, p_m2))]
        if d % 2:
            last = repaired_final_composition(p, m, d) if repaired else printed_final_composition(p, m, d)
            terms += [
                (k3, _eta(p, m, mid_odd)), (k3, _eta(p, m, -mid_odd)),
                (k4, _flat(p, m, -top_even)), (k5, last),
            ]
        else:
            terms += [
                (k3, _flat(p, m, -mid_even)), (k3, _flat(p, m, mid_even)),
                (k4, _flat(p, m, -top_even)), (k5, _flat(p, m, top_even)),
            ]
    return _table("C2", p, m, l, terms)


def closed_form_cwe(p: int, m: int, l: int, code: str) -> CweTable:
    code = normalize_code(code)
    return closed_form_cwe_c1(p, m, l) if code == "C1" else closed_form_cwe_c2(p, m, l)


def has_printed_repair(m: int, l: int, code: str) -> bool:
    """True when the printed closed form for these parameters needs the sign repair."""
    return normalize_code(code) == "C2" and c2_case(m, l) == "s even, d odd"


# -- the exhaustive oracle --------------------------------------------------------

@dataclass
class OracleResult:
    table: CweTable
    weight_census: WeightDistribution
    tuples: int


def run_oracle(
    ctx: FieldContext,
    l: int,
    code: str,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> OracleResult:
    """Enumerate every codeword and tally compositions over distinct codewords."""
    code = normalize_code(code)
    return oracle_from_sweep(ctx, l, code, sweep(ctx, l, code, budget=budget, workers=workers))


def oracle_from_sweep(ctx: FieldContext, l: int, code: str, res: SweepResult) -> OracleResult:
    """Each codeword is hit (tuples / p^dim) times; the division is checked for
    exactness, so a wrong dimension surfaces as DegeneracyMismatch."""
    code = normalize_code(code)
    p, m = ctx.p, ctx.m
    dim = code_dimension(m, l, code)
    zero = (ctx.order,) + (0,) * (p - 1)
    entries = _divide_degeneracy(res.compositions, p, res.tuples, dim, zero)
    factor = res.tuples // p**dim
    census = res.weights
    if np.any(census % factor):
        raise DegeneracyMismatch("weight census is not divisible by the degeneracy factor")
    weights = WeightDistribution(tuple(int(a) for a in census // factor))
    return OracleResult(CweTable(code, p, m, l, dim, entries), weights, res.tuples)


def brute_force_cwe(
    ctx: FieldContext,
    l: int,
    code: str,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CweTable:
    return run_oracle(ctx, l, code, budget=budget, workers=workers).table


def minimal_polynomial_dimension(ctx: FieldContext, l: int, code: str) -> int:
    """Code dimension read off the parity-check polynomial degrees."""
    code = normalize_code(code)
    h1 = ctx.minimal_polynomial(ctx.element(-(ctx.p**l + 1)))
    if code == "C1":
        return len(h1) - 1
    h2 = ctx.minimal_polynomial(ctx.element(-2))
    return len(h1) - 1 + (0 if h1 == h2 else len(h2) - 1)
