"""Exact arithmetic in rings of cyclotomic integers Z[zeta_n].

Elements are held in a canonical form: integer coordinates over the power
basis {zeta_n^j : 0 <= j < phi(n)}, reduced modulo the n-th cyclotomic
polynomial after every operation.  Equality is therefore a plain coefficient
comparison, which the group and character machinery relies on.  Coefficients
are Python ints, so sums over whole groups never overflow.

Polynomials below are coefficient tuples in ascending degree order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ModulusError


def _poly_trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod_monic(a: tuple[int, ...], d: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Divide by a monic divisor, exactly over Z."""
    assert d and d[-1] == 1
    rem = list(a)
    deg_d = len(d) - 1
    quot = [0] * max(len(a) - deg_d, 0)
    for top in range(len(rem) - 1, deg_d - 1, -1):
        c = rem[top]
        if c:
            quot[top - deg_d] = c
            for j, dj in enumerate(d):
                rem[top - deg_d + j] -= c * dj
    return _poly_trim(quot), _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree.

    Computed by exact division of x^n - 1 by the product of the cyclotomic
    polynomials of the proper divisors of n.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    xn1 = (-1,) + (0,) * (n - 1) + (1,)
    if n == 1:
        return xn1
    divisor: tuple[int, ...] = (1,)
    for d in range(1, n):
        if n % d == 0:
            divisor = _poly_mul(divisor, cyclotomic_polynomial(d))
    quot, rem = _poly_divmod_monic(xn1, divisor)
    assert rem == (), f"cyclotomic division left a remainder for n={n}"
    return quot


def phi(n: int) -> int:
    """Euler totient, read off as the degree of the cyclotomic polynomial."""
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _root_coeff_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical coefficient vector of zeta_n^e for every residue e."""
    deg = phi(n)
    out = []
    for e in range(n):
        raw = [0] * (e + 1)
        raw[e] = 1
        out.append(_reduce(n, tuple(raw), deg))
    return tuple(out)


def _reduce(n: int, coeffs: tuple[int, ...], deg: int | None = None) -> tuple[int, ...]:
    if deg is None:
        deg = phi(n)
    if len(coeffs) > deg:
        _, coeffs = _poly_divmod_monic(coeffs, cyclotomic_polynomial(n))
    return tuple(coeffs) + (0,) * (deg - len(coeffs))


@dataclass(frozen=True)
class RootOfUnity:
    """A root of unity zeta_n^e with the exponent stored reduced mod n."""

    modulus: int
    exponent: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.modulus != other.modulus:
            raise ModulusError(f"cannot multiply roots modulo {self.modulus} and {other.modulus}")
        return RootOfUnity(self.modulus, self.exponent + other.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.modulus, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.modulus, -self.exponent)

    conjugate = inverse

    @property
    def order(self) -> int:
        """Multiplicative order: n / gcd(n, e)."""
        return self.modulus // gcd(self.modulus, self.exponent)

    def is_primitive(self) -> bool:
        return self.order == self.modulus

    def lift(self, modulus: int) -> "RootOfUnity":
        """Rewrite with respect to a larger compatible modulus."""
        if modulus % self.modulus != 0:
            raise ModulusError(f"{self.modulus} does not divide {modulus}")
        return RootOfUnity(modulus, self.exponent * (modulus // self.modulus))

    def as_cyclotomic(self) -> "CycInt":
        return CycInt.root(self.modulus, self.exponent)

    def __repr__(self):
        return f"zeta({self.modulus})^{self.exponent}"


def root_order(r: RootOfUnity) -> int:
    return r.order


class CycInt:
    """A cyclotomic integer in canonical power-basis form."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs=()):
        self.modulus = modulus
        self.coeffs = _reduce(modulus, tuple(coeffs))

    @classmethod
    def zero(cls, n: int) -> "CycInt":
        return cls(n, ())

    @classmethod
    def one(cls, n: int) -> "CycInt":
        return cls(n, (1,))

    @classmethod
    def integer(cls, n: int, k: int) -> "CycInt":
        return cls(n, (k,))

    @classmethod
    def root(cls, n: int, e: int) -> "CycInt":
        return cls(n, _root_coeff_table(n)[e % n])

    @classmethod
    def from_root(cls, r: RootOfUnity) -> "CycInt":
        return cls.root(r.modulus, r.exponent)

    def _check(self, other: "CycInt"):
        if self.modulus != other.modulus:
            raise ModulusError(f"mixed moduli {self.modulus} and {other.modulus}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.modulus, other)
        self._check(other)
        return CycInt(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.modulus, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.modulus, tuple(a * other for a in self.coeffs))
        self._check(other)
        return CycInt(self.modulus, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def conjugate(self) -> "CycInt":
        """Complex conjugation, zeta^j -> zeta^(-j)."""
        n = self.modulus
        table = _root_coeff_table(n)
        deg = len(self.coeffs)
        out = [0] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                for k, b in enumerate(table[(-j) % n]):
                    out[k] += c * b
        return CycInt(n, tuple(out))

    def as_integer(self) -> int | None:
        """The rational integer value, or None if any non-constant
        canonical coefficient is nonzero."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else 0

    def as_root(self) -> RootOfUnity | None:
        """Recover a pure root of unity from its canonical form, if it is one."""
        table = _root_coeff_table(self.modulus)
        for e, vec in enumerate(table):
            if vec == self.coeffs:
                return RootOfUnity(self.modulus, e)
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            return self.as_integer() == other
        return (
            isinstance(other, CycInt)
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.modulus, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"CycInt({self.modulus}: {' + '.join(terms) or '0'})"


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_conj(a: CycInt) -> CycInt:
    return a.conjugate()


def is_rational_integer(a: CycInt) -> int | None:
    return a.as_integer()
