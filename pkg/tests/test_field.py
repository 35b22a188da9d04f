import numpy as np
import pytest

from cyclocwe.errors import CapExceeded, NotPrime, NotPrimitive, ParameterError
from cyclocwe.field import (
    ZERO,
    build_field,
    is_primitive_polynomial,
    primitive_polynomials,
)


def test_prime_field_has_trivial_tables():
    ctx = build_field(3, 1)
    assert ctx.antilog.tolist() == [1, 2]
    assert [ctx.trace(x) for x in ctx.nonzero_elements()] == [1, 2]


def test_default_polynomial_is_smallest_primitive():
    ctx = build_field(3, 2)
    assert tuple(ctx.prim_poly) == (2, 1, 1)
    assert tuple(ctx.prim_poly) == next(primitive_polynomials(3, 2))


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_log_antilog_are_inverse(field, p, m):
    ctx = field(p, m)
    assert sorted(ctx.antilog.tolist()) == list(range(1, ctx.size))
    for k in range(ctx.order):
        assert ctx.log[ctx.antilog[k]] == k


@pytest.mark.parametrize("p,m", [(3, 3), (5, 2)])
def test_arithmetic_matches_polynomial_model(field, p, m):
    """Multiplication against schoolbook polynomial products mod the modulus."""
    ctx = field(p, m)
    poly = list(ctx.prim_poly)

    def polymul(u, v):
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod[i + j] += a * b
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            for i in range(m + 1):
                prod[deg - m + i] -= c * poly[i]
        return tuple(x % p for x in prod[:m])

    elems = list(ctx.elements())
    for x in elems[:: max(1, len(elems) // 11)]:
        for y in elems[:: max(1, len(elems) // 7)]:
            assert ctx.to_vector(ctx.mul(x, y)) == polymul(ctx.to_vector(x), ctx.to_vector(y))
            s = tuple((a + b) % p for a, b in zip(ctx.to_vector(x), ctx.to_vector(y)))
            assert ctx.to_vector(ctx.add(x, y)) == s
            assert ctx.add(ctx.sub(x, y), y) == x


def test_inverse_and_zero(field):
    ctx = field(5, 2)
    for x in ctx.nonzero_elements():
        assert ctx.mul(x, ctx.inv(x)) == ctx.one
        assert ctx.add(x, ctx.neg(x)) == ZERO
    with pytest.raises(ZeroDivisionError):
        ctx.inv(ZERO)


@pytest.mark.parametrize("p,m", [(3, 3), (5, 2), (3, 4)])
def test_trace_is_balanced_and_frobenius_invariant(field, p, m):
    ctx = field(p, m)
    counts = np.bincount([ctx.trace(x) for x in ctx.elements()], minlength=p)
    assert counts.tolist() == [p ** (m - 1)] * p
    for x in list(ctx.elements())[:20]:
        assert ctx.trace(ctx.pow(x, p)) == ctx.trace(x)


def test_quadratic_character(field):
    ctx = field(3, 2)
    values = [ctx.quad_char(x) for x in ctx.nonzero_elements()]
    assert values == [1 if k % 2 == 0 else -1 for k in range(ctx.order)]
    assert ctx.quad_char(ZERO) == 0


def test_minimal_polynomial_degrees(field):
    assert len(field(3, 2).minimal_polynomial(field(3, 2).element(-4))) - 1 == 1
    assert len(field(3, 3).minimal_polynomial(field(3, 3).element(-4))) - 1 == 3
    ctx = field(3, 3)
    assert tuple(ctx.minimal_polynomial(ctx.alpha)) == tuple(ctx.prim_poly)


def test_primitive_polynomial_checks():
    assert is_primitive_polynomial([2, 1, 1], 3)
    assert not is_primitive_polynomial([1, 0, 1], 3)   # x^2 + 1 has order 4 only
    assert len(list(primitive_polynomials(3, 2))) == 2  # phi(8) / 2


def test_poly_override_and_errors():
    polys = list(primitive_polynomials(3, 3))
    ctx = build_field(3, 3, polys[1])
    assert tuple(ctx.prim_poly) == tuple(polys[1])
    assert ctx.descriptor()["prim_poly"] == list(polys[1])
    with pytest.raises(NotPrimitive):
        build_field(3, 2, [1, 0, 1])
    with pytest.raises(NotPrime):
        build_field(4, 2)
    with pytest.raises(NotPrime):
        build_field(2, 3)
    with pytest.raises(CapExceeded):
        build_field(3, 8, cap=1000)
    assert issubclass(NotPrime, ParameterError) and issubclass(ParameterError, ValueError)
