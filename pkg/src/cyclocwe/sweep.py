"""Exhaustive codeword sweeps over the trace-form codes.

A codeword is ``(Tr(a x^(p^l+1) + b x^2))_{x != 0}``.  Writing x = alpha^k,
the two monomials have logs ``k(p^l+1)`` and ``2k``, so a coefficient row
``Tr(alpha^j * x^e)`` is a gather from the trace-of-power table.  Rows for
``a`` and ``b`` are added mod p by linearity of the trace.

Row index r of a coefficient table stands for the coefficient 0 when r == 0
and for alpha^(r-1) otherwise.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BadExponent, BudgetExceeded
from .field import FieldContext

DEFAULT_BUDGET = 5 * 10**8

# bound on floats held by one block of the one-hot products
_BLOCK_FLOATS = 1 << 23


def check_exponent(m: int, l: int) -> None:
    if not 0 < l < m:
        raise BadExponent(f"need 0 < l < m, got l={l}, m={m}")


def quad_exponents(ctx: FieldContext, l: int) -> np.ndarray:
    """log of x^(p^l+1) for x = alpha^k, k = 0..n-1."""
    k = np.arange(ctx.order, dtype=np.int64)
    return (k * ((ctx.p**l + 1) % ctx.order)) % ctx.order


def square_exponents(ctx: FieldContext) -> np.ndarray:
    k = np.arange(ctx.order, dtype=np.int64)
    return (2 * k) % ctx.order


def coefficient_rows(ctx: FieldContext, exps: np.ndarray) -> np.ndarray:
    """Table of ``Tr(c * x^e)`` with one row per coefficient c in F_{p^m}."""
    n = ctx.order
    j = np.arange(n, dtype=np.int64)
    rows = np.zeros((ctx.size, n), dtype=np.int8)
    rows[1:] = ctx.trace_exp[(j[:, None] + exps[None, :]) % n]
    return rows


def sweep_size(ctx: FieldContext, code: str) -> int:
    """Number of trace evaluations an exhaustive sweep performs."""
    tuples = ctx.size if code == "C1" else ctx.size**2
    return tuples * ctx.order


@dataclass
class SweepResult:
    """Raw tallies over every coefficient tuple, before any deduplication."""

    compositions: Counter   # composition over x != 0 -> number of tuples
    weights: np.ndarray     # independent Hamming-weight census per tuple
    tuples: int


def _tally_rows(counts: np.ndarray, tally: Counter) -> None:
    rows, freq = np.unique(counts.reshape(-1, counts.shape[-1]), axis=0, return_counts=True)
    for row, f in zip(rows.tolist(), freq.tolist()):
        tally[tuple(row)] += f


def _sweep_block(ctx: FieldContext, l: int, code: str, start: int, stop: int):
    """Tally coefficient rows a in [start, stop) (paired with every b for C2)."""
    p, n = ctx.p, ctx.order
    a_rows = coefficient_rows(ctx, quad_exponents(ctx, l))[start:stop]
    tally: Counter = Counter()
    weights = np.zeros(n + 1, dtype=np.int64)

    if code == "C1":
        counts = np.stack([(a_rows == j).sum(axis=1) for j in range(p)], axis=1)
        _tally_rows(counts, tally)
        weights += np.bincount(np.count_nonzero(a_rows, axis=1), minlength=n + 1)
        return tally, weights

    b_rows = coefficient_rows(ctx, square_exponents(ctx))
    onehot_b = [(b_rows == v).T.astype(np.float64) for v in range(p)]
    block = max(1, _BLOCK_FLOATS // (ctx.size * p))
    for lo in range(0, len(a_rows), block):
        chunk = a_rows[lo:lo + block]
        onehot_a = [(chunk == u).astype(np.float64) for u in range(p)]
        # counts[a, b, j] = #{x : A[a,x] + B[b,x] = j mod p}
        counts = np.zeros((len(chunk), ctx.size, p), dtype=np.float64)
        for u in range(p):
            for v in range(p):
                counts[:, :, (u + v) % p] += onehot_a[u] @ onehot_b[v]
        _tally_rows(np.rint(counts).astype(np.int64), tally)

        # weight census from the codewords themselves, not from the counts above
        for row in chunk:
            w = b_rows + row
            nonzero = np.count_nonzero((w != 0) & (w != p), axis=1)
            weights += np.bincount(nonzero, minlength=n + 1)
    return tally, weights


def _block_task(args):
    return _sweep_block(*args)


def sweep(
    ctx: FieldContext,
    l: int,
    code: str,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SweepResult:
    """Enumerate every coefficient tuple of C1 (a) or C2 (a, b).

    Work is split over contiguous ranges of ``a``; partial tallies merge by
    addition, so the result does not depend on ``workers``.
    """
    check_exponent(ctx.m, l)
    if code not in ("C1", "C2"):
        raise ValueError(f"unknown code {code!r}")
    cost = sweep_size(ctx, code)
    if cost > budget:
        raise BudgetExceeded(f"{code} sweep needs {cost} evaluations, budget is {budget}")

    bounds = np.linspace(0, ctx.size, max(1, workers) + 1).astype(int)
    tasks = [(ctx, l, code, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_task, tasks))
    else:
        parts = [_block_task(t) for t in tasks]

    tally: Counter = Counter()
    weights = np.zeros(ctx.order + 1, dtype=np.int64)
    for part_tally, part_weights in parts:
        tally.update(part_tally)
        weights += part_weights
    tuples = ctx.size if code == "C1" else ctx.size**2
    return SweepResult(tally, weights, tuples)
