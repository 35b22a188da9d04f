"""Finite fields F_{p^m} for odd p, in discrete-log form.

Elements are stored as exponents of a fixed primitive element ``alpha``; zero
is the sentinel ``FieldElement(None)``.  Coefficient vectors (constant term
first) are packed into integer *codes* ``sum(c_i * p**i)`` so that every
table is a flat numpy array indexed either by code or by exponent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod

from .errors import CapExceeded, NotPrime, NotPrimitive, ParameterError

FIELD_CAP = 2**22


@dataclass(frozen=True)
class FieldElement:
    """``alpha**exp``, or zero when ``exp`` is None."""

    exp: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def __repr__(self) -> str:
        return "Zero" if self.exp is None else f"Exp({self.exp})"


ZERO = FieldElement(None)


# -- primitive polynomial search ---------------------------------------------

def _to_sympy(coeffs: Sequence[int]) -> list[int]:
    # galoistools wants the leading coefficient first
    return [int(c) for c in reversed(coeffs)]


def is_primitive_polynomial(coeffs: Sequence[int], p: int) -> bool:
    """True when the monic polynomial (constant term first) is primitive over F_p."""
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] % p != 1 or coeffs[0] % p == 0:
        return False
    f = _to_sympy([c % p for c in coeffs])
    if not gf_irreducible_p(f, p, ZZ):
        return False
    order = p**m - 1
    x = [1, 0]
    for q in factorint(order):
        if gf_pow_mod(x, order // q, f, p, ZZ) == [1]:
            return False
    return True


def primitive_polynomials(p: int, m: int) -> Iterator[tuple[int, ...]]:
    """Monic primitive polynomials of degree m, lexicographic on (c0, c1, ...)."""
    for low in itertools.product(range(p), repeat=m):
        coeffs = (*low, 1)
        if is_primitive_polynomial(coeffs, p):
            yield coeffs


# -- the field -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldContext:
    p: int
    m: int
    prim_poly: tuple[int, ...]
    antilog: np.ndarray      # exponent -> code
    log: np.ndarray          # code -> exponent, -1 at code 0
    trace_table: np.ndarray  # code -> Tr(x) in [0, p)

    @property
    def size(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group, also the code length n."""
        return self.p**self.m - 1

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[code, i]`` is the coefficient of alpha**i."""
        codes = np.arange(self.size, dtype=np.int64)
        powers = self.p ** np.arange(self.m, dtype=np.int64)
        out = (codes[:, None] // powers[None, :]) % self.p
        out.setflags(write=False)
        return out

    @cached_property
    def trace_exp(self) -> np.ndarray:
        """``trace_exp[k] = Tr(alpha**k)``."""
        out = self.trace_table[self.antilog]
        out.setflags(write=False)
        return out

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "prim_poly": list(self.prim_poly)}

    # element construction
    def element(self, k: int) -> FieldElement:
        return FieldElement(k % self.order)

    @property
    def one(self) -> FieldElement:
        return FieldElement(0)

    @property
    def alpha(self) -> FieldElement:
        return FieldElement(1 % self.order)

    def from_code(self, code: int) -> FieldElement:
        k = int(self.log[code])
        return ZERO if k < 0 else FieldElement(k)

    def to_code(self, x: FieldElement) -> int:
        return 0 if x.exp is None else int(self.antilog[x.exp])

    def from_int(self, c: int) -> FieldElement:
        """Embed c mod p as a prime-field element."""
        return self.from_code(c % self.p)

    def from_vector(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) != self.m:
            raise ParameterError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return self.from_code(sum((c % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def to_vector(self, x: FieldElement) -> tuple[int, ...]:
        return tuple(int(v) for v in self.digits[self.to_code(x)])

    def elements(self) -> Iterator[FieldElement]:
        yield ZERO
        yield from self.nonzero_elements()

    def nonzero_elements(self) -> Iterator[FieldElement]:
        for k in range(self.order):
            yield FieldElement(k)

    # arithmetic
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if a.exp is None:
            return b
        if b.exp is None:
            return a
        s = (self.digits[self.antilog[a.exp]] + self.digits[self.antilog[b.exp]]) % self.p
        return self.from_code(int(s @ (self.p ** np.arange(self.m, dtype=np.int64))))

    def neg(self, a: FieldElement) -> FieldElement:
        if a.exp is None:
            return a
        # -1 = alpha**(order/2)
        return FieldElement((a.exp + self.order // 2) % self.order)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if a.exp is None or b.exp is None:
            return ZERO
        return FieldElement((a.exp + b.exp) % self.order)

    def inv(self, a: FieldElement) -> FieldElement:
        if a.exp is None:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(-a.exp % self.order)

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if a.exp is None:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self.one if k == 0 else ZERO
        return FieldElement((a.exp * k) % self.order)

    def trace(self, x: FieldElement) -> int:
        return int(self.trace_table[self.to_code(x)])

    def quad_char(self, x: FieldElement) -> int:
        if x.exp is None:
            return 0
        return 1 if x.exp % 2 == 0 else -1

    def frobenius_orbit(self, x: FieldElement) -> list[FieldElement]:
        if x.exp is None:
            return [ZERO]
        orbit = [x]
        while True:
            nxt = FieldElement(orbit[-1].exp * self.p % self.order)
            if nxt == x:
                return orbit
            orbit.append(nxt)

    def minimal_polynomial(self, x: FieldElement) -> tuple[int, ...]:
        """Minimal polynomial of x over F_p, constant term first."""
        # prod over the conjugates of (t - r), expanded in F_{p^m}
        poly = [self.one]
        for r in self.frobenius_orbit(x):
            minus_r = self.neg(r)
            shifted = [ZERO, *poly]
            scaled = [self.mul(minus_r, c) for c in poly] + [ZERO]
            poly = [self.add(u, v) for u, v in zip(shifted, scaled)]
        out = []
        for c in poly:
            code = self.to_code(c)
            if code >= self.p:
                raise ArithmeticError("minimal polynomial coefficient outside F_p")
            out.append(code)
        return tuple(out)


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise NotPrime(f"p={p} is not an odd prime")


def build_field(
    p: int,
    m: int,
    poly_override: Sequence[int] | None = None,
    cap: int = FIELD_CAP,
) -> FieldContext:
    """Build F_{p^m} from the lexicographically smallest primitive polynomial.

    ``poly_override`` (constant term first, monic, degree m) replaces the
    default choice; it must be primitive.
    """
    _check_prime(p)
    if m < 1:
        raise ParameterError(f"extension degree m={m} must be >= 1")
    if p**m > cap:
        raise CapExceeded(f"p^m = {p**m} exceeds the field cap {cap}")

    if poly_override is not None:
        coeffs = tuple(int(c) % p for c in poly_override)
        if len(coeffs) != m + 1 or coeffs[-1] != 1:
            raise NotPrimitive(f"override {list(poly_override)} is not monic of degree {m}")
        if not is_primitive_polynomial(coeffs, p):
            raise NotPrimitive(f"override {list(poly_override)} is not primitive over F_{p}")
    else:
        coeffs = next(primitive_polynomials(p, m))

    size, order = p**m, p**m - 1
    antilog = np.empty(order, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)
    low = coeffs[:m]
    vec = [1] + [0] * (m - 1)
    for k in range(order):
        code = sum(c * p**i for i, c in enumerate(vec))
        if log[code] >= 0:
            raise NotPrimitive(f"polynomial {list(coeffs)} is not primitive")
        antilog[k] = code
        log[code] = k
        # multiply by alpha, then reduce alpha**m = -(c0 + c1 alpha + ...)
        top = vec[-1]
        vec = [0] + vec[:-1]
        vec = [(v - top * c) % p for v, c in zip(vec, low)]

    # Tr(alpha**k) = sum_i alpha**(k p^i), summed coordinate-wise
    powers = p ** np.arange(m, dtype=np.int64)
    antilog_digits = (antilog[:, None] // powers[None, :]) % p
    ks = np.arange(order, dtype=np.int64)
    acc = np.zeros((order, m), dtype=np.int64)
    for i in range(m):
        acc += antilog_digits[(ks * pow(p, i, order)) % order]
    acc %= p
    if np.any(acc[:, 1:]):
        raise ArithmeticError("trace landed outside the prime field")
    trace_table = np.zeros(size, dtype=np.int64)
    trace_table[antilog] = acc[:, 0]

    for arr in (antilog, log, trace_table):
        arr.setflags(write=False)
    return FieldContext(p, m, coeffs, antilog, log, trace_table)
