"""Exact arithmetic in Z[zeta_p] and the symbolic values sign * i^t * p^(e/2).

A :class:`CyclotomicInt` is stored in the basis 1, zeta, ..., zeta^(p-2); the
relation 1 + zeta + ... + zeta^(p-1) = 0 removes zeta^(p-1), which makes the
representation canonical.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

from .errors import MixedPrimes, ValueOutsideFamily


def legendre(y: int, p: int) -> int:
    """Quadratic character of F_p, by Euler's criterion."""
    y %= p
    if y == 0:
        return 0
    return 1 if pow(y, (p - 1) // 2, p) == 1 else -1


def _reduce(full: Sequence[int], p: int) -> tuple[int, ...]:
    """Fold a length-p coefficient list (powers 0..p-1) into the canonical basis."""
    top = full[p - 1]
    return tuple(int(full[i]) - int(top) for i in range(p - 1))


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def integer(cls, p: int, n: int) -> CyclotomicInt:
        return cls(p, (int(n),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CyclotomicInt:
        full = [0] * p
        full[k % p] = 1
        return cls(p, _reduce(full, p))

    @classmethod
    def from_counts(cls, p: int, counts: Sequence[int]) -> CyclotomicInt:
        """``sum(counts[j] * zeta**j)`` for j in 0..p-1."""
        if len(counts) != p:
            raise ValueError(f"expected {p} counts, got {len(counts)}")
        return cls(p, _reduce(counts, p))

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other: CyclotomicInt) -> None:
        if other.p != self.p:
            raise MixedPrimes(f"cannot combine Z[zeta_{self.p}] with Z[zeta_{other.p}]")

    def _coerce(self, other) -> CyclotomicInt:
        if isinstance(other, int):
            return CyclotomicInt.integer(self.p, other)
        if isinstance(other, CyclotomicInt):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CyclotomicInt(p, _reduce(full, p))

    __rmul__ = __mul__

    def scale(self, n: int) -> CyclotomicInt:
        return CyclotomicInt(self.p, tuple(n * a for a in self.coeffs))

    def __pow__(self, k: int) -> CyclotomicInt:
        if k < 0:
            raise ValueError("negative powers are not in Z[zeta]")
        out = CyclotomicInt.integer(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def conjugate_by(self, y: int) -> CyclotomicInt:
        """Galois automorphism zeta -> zeta**y, for y prime to p."""
        p = self.p
        if y % p == 0:
            raise ValueError("y must be a unit mod p")
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            full[(i * y) % p] += a
        return CyclotomicInt(p, _reduce(full, p))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * z**i for i, a in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*z^{i}")
        return " + ".join(terms) if terms else "0"


def quadratic_gauss_sum(p: int) -> CyclotomicInt:
    """sum over y in F_p^* of legendre(y) * zeta**y."""
    return CyclotomicInt.from_counts(p, [legendre(y, p) for y in range(p)])


def _quartic_of_p(p: int) -> int:
    # the prime-field Gauss sum is sqrt(p) for p = 1 mod 4 and i*sqrt(p) otherwise
    return 0 if p % 4 == 1 else 1


def _log_p(n: int, p: int) -> int | None:
    """k with n == p**k, else None."""
    if n < 1:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


@dataclass(frozen=True)
class GaussTypeValue:
    """The algebraic number ``sign * i**quartic * p**(half_exp/2)``.

    Normal form keeps ``quartic`` in {0, 1}; a factor i**2 is folded into
    ``sign``.
    """

    sign: int
    quartic: int
    half_exp: int

    @classmethod
    def make(cls, sign: int, quarter_turns: int, half_exp: int) -> GaussTypeValue:
        t = quarter_turns % 4
        if t >= 2:
            sign, t = -sign, t - 2
        if sign not in (1, -1) or half_exp < 0:
            raise ValueError(f"bad value sign={sign} half_exp={half_exp}")
        return cls(sign, t, half_exp)

    @property
    def imaginary(self) -> bool:
        return self.quartic == 1

    def sort_key(self) -> tuple[int, int, int]:
        return (self.half_exp, self.quartic, self.sign)

    def __mul__(self, other: GaussTypeValue) -> GaussTypeValue:
        return GaussTypeValue.make(
            self.sign * other.sign, self.quartic + other.quartic, self.half_exp + other.half_exp
        )

    def __neg__(self) -> GaussTypeValue:
        return GaussTypeValue(-self.sign, self.quartic, self.half_exp)

    def times_sign(self, s: int) -> GaussTypeValue:
        return GaussTypeValue(self.sign * s, self.quartic, self.half_exp)

    def square(self, p: int) -> int:
        """The value squared, always a rational integer."""
        return (-1 if self.quartic else 1) * p**self.half_exp

    def is_integer(self) -> bool:
        return self.quartic == 0 and self.half_exp % 2 == 0

    def integer_value(self, p: int) -> int:
        if not self.is_integer():
            raise ValueError(f"{self.render(p)} is not a rational integer")
        return self.sign * p ** (self.half_exp // 2)

    def to_cyclotomic(self, p: int) -> CyclotomicInt:
        """Embed into Z[zeta_p]; only values that live in Q(zeta_p) are accepted."""
        if self.half_exp % 2 == 0:
            if self.quartic:
                raise ValueOutsideFamily(f"{self.render(p)} does not lie in Q(zeta_{p})")
            return CyclotomicInt.integer(p, self.sign * p ** (self.half_exp // 2))
        if self.quartic != _quartic_of_p(p):
            raise ValueOutsideFamily(f"{self.render(p)} does not lie in Q(zeta_{p})")
        return quadratic_gauss_sum(p).scale(self.sign * p ** (self.half_exp // 2))

    def to_complex(self, p: int) -> complex:
        return self.sign * (1j if self.quartic else 1) * p ** (self.half_exp / 2)

    def render(self, p: int) -> str:
        s = "-" if self.sign < 0 else "+"
        unit = "i*" if self.quartic else ""
        if self.half_exp % 2 == 0:
            return f"{s}{unit}{p ** (self.half_exp // 2)}"
        return f"{s}{unit}{p}^({self.half_exp}/2)"


def classify(value: CyclotomicInt) -> GaussTypeValue:
    """Recognise ``value`` as +-p^k or +-p^k * G, G the prime-field Gauss sum.

    Anything else raises :class:`ValueOutsideFamily`.
    """
    p = value.p
    if value.is_rational():
        n = value.coeffs[0]
        k = _log_p(abs(n), p)
        if k is None:
            raise ValueOutsideFamily(f"{n} is not +-{p}^k")
        return GaussTypeValue(1 if n > 0 else -1, 0, 2 * k)
    g = quadratic_gauss_sum(p)
    g_squared = legendre(-1, p) * p
    prod = value * g
    if not prod.is_rational() or prod.coeffs[0] % g_squared:
        raise ValueOutsideFamily(f"{value} is not a rational multiple of the Gauss sum")
    n = prod.coeffs[0] // g_squared
    if g.scale(n) != value:
        raise ValueOutsideFamily(f"{value} is not a rational multiple of the Gauss sum")
    k = _log_p(abs(n), p)
    if k is None:
        raise ValueOutsideFamily(f"{value} = {n}*G with {n} not +-{p}^k")
    return GaussTypeValue(1 if n > 0 else -1, _quartic_of_p(p), 2 * k + 1)


def quartic_class(value: CyclotomicInt) -> tuple[int, int]:
    """(sign, quartic) of a value whose square is a nonzero rational integer.

    Real versus imaginary follows from the sign of the square; the sign is
    read off the complex embedding, whose relevant coordinate has magnitude
    at least 1 for a nonzero algebraic integer of this shape.
    """
    sq = value * value
    if not sq.is_rational() or sq.coeffs[0] == 0:
        raise ValueError(f"{value} does not square to a nonzero rational")
    z = value.to_complex()
    if sq.coeffs[0] > 0:
        return (1 if z.real > 0 else -1, 0)
    return (1 if z.imag > 0 else -1, 1)
