"""Gauss sums, the sums S(a) and T(a, b), their value distributions, and
quadratic-form ranks.

``*_closed`` functions evaluate the known closed forms symbolically; the
others sum exactly over the field in Z[zeta_p].
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, NamedTuple

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from .cyclotomic import CyclotomicInt, GaussTypeValue, classify
from .errors import DegenerateQuadratic, NotBilinear, ParameterError
from .field import FieldContext, FieldElement
from .sweep import (
    DEFAULT_BUDGET,
    SweepResult,
    check_exponent,
    quad_exponents,
    square_exponents,
    sweep,
)


def nu2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    if n <= 0:
        raise ValueError("nu2 needs a positive integer")
    return (n & -n).bit_length() - 1


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


# -- Gauss sums ------------------------------------------------------------

def gauss_sum_direct(ctx: FieldContext) -> CyclotomicInt:
    """sum over x != 0 of eta(x) zeta^Tr(x), exactly."""
    eta = np.where(np.arange(ctx.order) % 2 == 0, 1, -1)
    counts = np.bincount(ctx.trace_exp, weights=eta, minlength=ctx.p)
    return CyclotomicInt.from_counts(ctx.p, [int(c) for c in np.rint(counts)])


def gauss_sum_closed(p: int, m: int) -> GaussTypeValue:
    """(-1)^(m-1) * i^((p-1)^2 m / 4) * p^(m/2)."""
    return GaussTypeValue.make((-1) ** (m - 1), (p - 1) ** 2 // 4 * m, m)


# -- single sums --------------------------------------------------------------

def _sum_over_codes(ctx: FieldContext, codes: np.ndarray, at_zero: int) -> CyclotomicInt:
    """sum of zeta^Tr(v) over the values v (given as codes) at x != 0, plus x = 0."""
    counts = np.bincount(ctx.trace_table[codes], minlength=ctx.p).astype(np.int64)
    counts[ctx.trace_table[at_zero]] += 1
    return CyclotomicInt.from_counts(ctx.p, counts.tolist())


def _monomial_codes(ctx: FieldContext, c: FieldElement, exps: np.ndarray) -> np.ndarray:
    """codes of c * x^e for x = alpha^k, given e = exps[k]."""
    if c.is_zero:
        return np.zeros(ctx.order, dtype=np.int64)
    return ctx.antilog[(c.exp + exps) % ctx.order]


def add_codes(ctx: FieldContext, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Field addition on arrays of element codes."""
    s = (ctx.digits[u] + ctx.digits[v]) % ctx.p
    return s @ (ctx.p ** np.arange(ctx.m, dtype=np.int64))


def quadratic_sum_identity_check(
    ctx: FieldContext, a2: FieldElement, a1: FieldElement, a0: FieldElement
) -> tuple[CyclotomicInt, CyclotomicInt]:
    """Both sides of the quadratic-polynomial character-sum identity.

    Returns ``(sum_x chi(a2 x^2 + a1 x + a0),
    chi(a0 - a1^2 / (4 a2)) * eta(a2) * G)``; they must agree.
    """
    if a2.is_zero:
        raise DegenerateQuadratic("leading coefficient a2 is zero")
    k = np.arange(ctx.order, dtype=np.int64)
    c0 = ctx.to_code(a0)
    values = add_codes(ctx, _monomial_codes(ctx, a2, 2 * k), _monomial_codes(ctx, a1, k))
    values = add_codes(ctx, values, np.full(ctx.order, c0, dtype=np.int64))
    direct = _sum_over_codes(ctx, values, c0)

    four_a2 = ctx.mul(ctx.from_int(4), a2)
    shift = ctx.sub(a0, ctx.mul(ctx.pow(a1, 2), ctx.inv(four_a2)))
    closed = CyclotomicInt.zeta(ctx.p, ctx.trace(shift)) * gauss_sum_direct(ctx).scale(ctx.quad_char(a2))
    return direct, closed


def exp_sum_S(ctx: FieldContext, l: int, a: FieldElement) -> CyclotomicInt:
    """sum over all x of zeta^Tr(a x^(p^l+1))."""
    check_exponent(ctx.m, l)
    return _sum_over_codes(ctx, _monomial_codes(ctx, a, quad_exponents(ctx, l)), 0)


def exp_sum_T(ctx: FieldContext, l: int, a: FieldElement, b: FieldElement) -> CyclotomicInt:
    """sum over all x of zeta^Tr(a x^(p^l+1) + b x^2)."""
    check_exponent(ctx.m, l)
    codes = add_codes(
        ctx,
        _monomial_codes(ctx, a, quad_exponents(ctx, l)),
        _monomial_codes(ctx, b, square_exponents(ctx)),
    )
    return _sum_over_codes(ctx, codes, 0)


# -- distributions --------------------------------------------------------------

@dataclass(frozen=True)
class SumDistribution:
    kind: str   # "S" or "T"
    p: int
    m: int
    l: int
    entries: tuple[tuple[GaussTypeValue, int], ...]
    total: int

    @classmethod
    def from_counter(cls, kind: str, p: int, m: int, l: int, counter: Counter) -> SumDistribution:
        entries = tuple(
            sorted(((v, f) for v, f in counter.items() if f), key=lambda e: e[0].sort_key())
        )
        return cls(kind, p, m, l, entries, sum(f for _, f in entries))

    @property
    def d(self) -> int:
        return gcd(self.m, self.l)

    @property
    def s(self) -> int:
        return self.m // self.d

    def as_dict(self) -> dict[GaussTypeValue, int]:
        return dict(self.entries)

    def diff(self, other: SumDistribution) -> list[dict]:
        mine, theirs = self.as_dict(), other.as_dict()
        out = []
        for v in sorted(set(mine) | set(theirs), key=GaussTypeValue.sort_key):
            if mine.get(v, 0) != theirs.get(v, 0):
                out.append({"value": v.render(self.p), "left": mine.get(v, 0), "right": theirs.get(v, 0)})
        return out

    def to_json(self) -> dict:
        return {
            "sum": self.kind,
            "p": self.p,
            "m": self.m,
            "l": self.l,
            "d": self.d,
            "s": self.s,
            "entries": [
                {"sign": v.sign, "imaginary": v.imaginary, "half_exp": v.half_exp, "freq": f}
                for v, f in self.entries
            ],
            "total": self.total,
        }

    def to_text(self) -> str:
        return "\n".join(f"{v.render(self.p)}: {f}" for v, f in self.entries)


def _classify_tally(p: int, tally: Iterable[tuple[tuple[int, ...], int]]) -> Counter:
    out: Counter = Counter()
    for comp, freq in tally:
        counts = list(comp)
        counts[0] += 1  # the x = 0 term
        out[classify(CyclotomicInt.from_counts(p, counts))] += freq
    return out


def distribution_from_sweep(ctx: FieldContext, l: int, res: SweepResult) -> SumDistribution:
    """Classify the exact sum behind every nonzero coefficient tuple of a sweep."""
    tally = Counter(res.compositions)
    tally[(ctx.order,) + (0,) * (ctx.p - 1)] -= 1  # drop the all-zero coefficient tuple
    kind = "S" if res.tuples == ctx.size else "T"
    return SumDistribution.from_counter(kind, ctx.p, ctx.m, l, _classify_tally(ctx.p, tally.items()))


def s_distribution(ctx: FieldContext, l: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> SumDistribution:
    """Values of S(a) over a != 0, by exhaustive summation."""
    return distribution_from_sweep(ctx, l, sweep(ctx, l, "C1", budget=budget, workers=workers))


def t_distribution(ctx: FieldContext, l: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> SumDistribution:
    """Values of T(a, b) over (a, b) != (0, 0), by exhaustive summation."""
    return distribution_from_sweep(ctx, l, sweep(ctx, l, "C2", budget=budget, workers=workers))


def _root_quartic(p: int, d: int) -> int:
    """sqrt((-1)^((p^d-1)/2)) as a power of i: 0 or 1."""
    return ((p**d - 1) // 2) % 2


def _check_params(p: int, m: int, l: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ParameterError(f"p={p} must be an odd prime")
    check_exponent(m, l)


def s_distribution_closed(p: int, m: int, l: int) -> SumDistribution:
    _check_params(p, m, l)
    d = gcd(m, l)
    t = _root_quartic(p, d)
    n = p**m - 1
    V = GaussTypeValue
    if nu2(m) <= nu2(l):
        counter = Counter({V(1, t, m): n // 2, V(-1, t, m): n // 2})
    elif nu2(m) == nu2(l) + 1:
        counter = Counter({
            V(-1, 0, m): _exact_div(p**d * n, p**d + 1),
            V(1, 0, m + 2 * d): _exact_div(n, p**d + 1),
        })
    else:
        counter = Counter({
            V(1, 0, m): _exact_div(p**d * n, p**d + 1),
            V(-1, 0, m + 2 * d): _exact_div(n, p**d + 1),
        })
    return SumDistribution.from_counter("S", p, m, l, counter)


def r_counts(p: int, m: int, d: int) -> tuple[int, int, int, int]:
    """|R_1|..|R_4|, the T(a, b) frequencies for odd s = m/d."""
    n = p**m - 1
    den = 2 * (p ** (2 * d) - 1)
    half = p ** ((m - d) // 2)
    return (
        _exact_div((p ** (m + 2 * d) - p ** (m + d) - p**m + p ** (2 * d)) * n, den),
        _exact_div((p ** (m - d) + half) * n, 2),
        _exact_div((p ** (m - d) - half) * n, 2),
        _exact_div((p ** (m - d) - 1) * n, den),
    )


def k_counts(p: int, m: int, d: int) -> tuple[int, int, int, int, int]:
    """|K_1|..|K_5|, the T(a, b) frequencies for even s = m/d."""
    n = p**m - 1
    den = 2 * (p ** (2 * d) - 1)
    h = m // 2
    core = p ** (m + 2 * d) - p ** (m + d) - p**m + p ** (2 * d)
    mid = p ** (h + 2 * d) - p ** (h + d)
    return (
        _exact_div((core + mid) * n, den),
        _exact_div((core - mid) * n, den),
        _exact_div(p ** (m - d) * n, 2),
        _exact_div((p**h - 1) * (p ** (h - d) + 1) * n, den),
        _exact_div((p**h + 1) * (p ** (h - d) - 1) * n, den),
    )


def t_distribution_closed(p: int, m: int, l: int) -> SumDistribution:
    _check_params(p, m, l)
    d = gcd(m, l)
    s = m // d
    t = _root_quartic(p, d)
    V = GaussTypeValue
    counter: Counter = Counter()
    if s % 2:
        r1, r2, r3, r4 = r_counts(p, m, d)
        counter[V(1, t, m)] += r1
        counter[V(-1, t, m)] += r1
        counter[V(1, 0, m + d)] += r2
        counter[V(-1, 0, m + d)] += r3
        counter[V(1, t, m + 2 * d)] += r4
        counter[V(-1, t, m + 2 * d)] += r4
    else:
        k1, k2, k3, k4, k5 = k_counts(p, m, d)
        counter[V(1, 0, m)] += k1
        counter[V(-1, 0, m)] += k2
        counter[V(1, t, m + d)] += k3
        counter[V(-1, t, m + d)] += k3
        counter[V(1, 0, m + 2 * d)] += k4
        counter[V(-1, 0, m + 2 * d)] += k5
    return SumDistribution.from_counter("T", p, m, l, counter)


def rank_of_value(m: int, value: GaussTypeValue) -> int:
    """Rank r of the quadratic form behind a sum of absolute value p^(m - r/2)."""
    return 2 * m - value.half_exp


# -- quadratic forms -------------------------------------------------------------

class QuadraticFormRank(NamedTuple):
    rank: int
    radical_size: int


def quadratic_form(ctx: FieldContext, l: int, a: FieldElement, b: FieldElement) -> Callable[[FieldElement], int]:
    """The evaluator x -> Tr(a x^(p^l+1) + b x^2)."""
    check_exponent(ctx.m, l)
    e = ctx.p**l + 1

    def q(x: FieldElement) -> int:
        return ctx.trace(ctx.add(ctx.mul(a, ctx.pow(x, e)), ctx.mul(b, ctx.pow(x, 2))))

    return q


def _check_points(ctx: FieldContext, limit: int = 2187, samples: int = 64) -> list[FieldElement]:
    if ctx.size <= limit:
        return list(ctx.elements())
    rng = np.random.default_rng(0)
    return [ctx.from_code(int(c)) for c in rng.integers(0, ctx.size, samples)]


def quadratic_form_rank(ctx: FieldContext, q: Callable[[FieldElement], int]) -> QuadraticFormRank:
    """Rank of q and size of the radical of its polar form.

    The polar form B(x, z) = q(x+z) - q(x) - q(z) is built on the basis
    1, alpha, ..., alpha^(m-1).  ``2 q(x) = X B X^T`` is checked on a set of
    points; failure means q is not a quadratic form.  The radical is counted
    by enumeration, separately from the elimination that gives the rank.
    """
    p, m = ctx.p, ctx.m
    basis = [ctx.element(i) for i in range(m)]
    qb = [q(e) for e in basis]
    B = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i, m):
            B[i, j] = B[j, i] = (q(ctx.add(basis[i], basis[j])) - qb[i] - qb[j]) % p

    for x in _check_points(ctx):
        X = np.array(ctx.to_vector(x), dtype=np.int64)
        if (2 * q(x) - X @ B @ X) % p:
            raise NotBilinear(f"evaluator is not a quadratic form with polar matrix {B.tolist()}")

    K = GF(p)
    rank = DomainMatrix([[K(int(v)) for v in row] for row in B], (m, m), K).rank()
    radical = int(np.count_nonzero(~((ctx.digits @ B) % p).any(axis=1)))
    return QuadraticFormRank(rank, radical)
