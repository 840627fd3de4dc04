"""Truncated p-adic arithmetic: Z_p, the unramified extension Z_q, Morita's
p-adic gamma function and Teichmueller lifts.

All values carry their precision ``M`` explicitly (a residue mod ``p**M``);
combining values of different precision raises :class:`PrecisionError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .field import FieldDesc

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class PrecisionError(ValueError):
    """Operands with mismatched prime/precision, or a non-unit inversion."""


def as_rational(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_floor(x: RationalLike) -> tuple[Fraction, int]:
    """Return (<x>, floor(x)) with x == floor(x) + <x> and 0 <= <x> < 1."""
    x = as_rational(x)
    fl = math.floor(x)
    return x - fl, fl


def frac(x: RationalLike) -> Fraction:
    return frac_floor(x)[0]


def floor(x: RationalLike) -> int:
    return math.floor(as_rational(x))


def representative(x: RationalLike, p: int, M: int) -> int:
    """The integer n in [0, p**M) congruent to x modulo p**M."""
    x = as_rational(x)
    if x.denominator % p == 0:
        raise PrecisionError(f"{x} is not a {p}-adic integer")
    pm = p ** M
    return x.numerator * pow(x.denominator, -1, pm) % pm


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicApprox:
    """An element of Z_p known modulo p**M."""

    p: int
    M: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.p ** self.M)

    @classmethod
    def from_rational(cls, x: RationalLike, p: int, M: int) -> "PadicApprox":
        return cls(p, M, representative(x, p, M))

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    def _coerce(self, other) -> int:
        if isinstance(other, PadicApprox):
            if (other.p, other.M) != (self.p, self.M):
                raise PrecisionError(
                    f"mixed precision: ({self.p}, {self.M}) vs ({other.p}, {other.M})")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicApprox(self.p, self.M, self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicApprox(self.p, self.M, self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicApprox(self.p, self.M, o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicApprox(self.p, self.M, self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicApprox(self.p, self.M, -self.residue)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return PadicApprox(self.p, self.M, pow(self.residue, k, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inv(self) -> "PadicApprox":
        if not self.is_unit():
            raise PrecisionError(f"{self.residue} is not a unit mod {self.p}")
        return PadicApprox(self.p, self.M, pow(self.residue, -1, self.modulus))

    def signed(self) -> int:
        """Representative in (-p**M/2, p**M/2]."""
        m = self.modulus
        return self.residue - m if self.residue > m // 2 else self.residue

    def reduce(self, M: int) -> "PadicApprox":
        if M > self.M:
            raise PrecisionError("cannot raise precision by reduction")
        return PadicApprox(self.p, M, self.residue)

    def __int__(self):
        return self.residue


@dataclass(frozen=True)
class ZqApprox:
    """An element of Z_q = Z_p[x]/(f^) known modulo p**M.

    ``f^`` is the coefficient-wise integer lift of the field modulus.
    """

    field: FieldDesc
    M: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        pm = self.field.p ** self.M
        c = tuple(x % pm for x in self.coeffs)
        if len(c) < self.field.r:
            c = c + (0,) * (self.field.r - len(c))
        elif len(c) > self.field.r:
            raise PrecisionError("too many coefficients for Z_q")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def scalar(cls, field: FieldDesc, M: int, n: int) -> "ZqApprox":
        return cls(field, M, (n,))

    @classmethod
    def lift(cls, field: FieldDesc, M: int, a: int) -> "ZqApprox":
        """Coefficient-wise lift of the F_q element with encoding a."""
        return cls(field, M, field.coeffs(a))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def modulus(self) -> int:
        return self.field.p ** self.M

    def _check(self, other: "ZqApprox"):
        if other.field != self.field or other.M != self.M:
            raise PrecisionError(
                f"mixed Z_q operands: (q={self.field.q}, M={self.M}) vs "
                f"(q={other.field.q}, M={other.M})")

    def __add__(self, other):
        if isinstance(other, (int, PadicApprox)):
            other = self._from_scalar(other)
        if not isinstance(other, ZqApprox):
            return NotImplemented
        self._check(other)
        return ZqApprox(self.field, self.M, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ZqApprox(self.field, self.M, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _from_scalar(self, s) -> "ZqApprox":
        if isinstance(s, PadicApprox):
            if (s.p, s.M) != (self.p, self.M):
                raise PrecisionError("mixed precision between Z_p and Z_q operands")
            s = s.residue
        return ZqApprox.scalar(self.field, self.M, s)

    def __mul__(self, other):
        if isinstance(other, PadicApprox):
            other = self._from_scalar(other)
        if isinstance(other, int):
            return ZqApprox(self.field, self.M, tuple(a * other for a in self.coeffs))
        if not isinstance(other, ZqApprox):
            return NotImplemented
        self._check(other)
        r = self.field.r
        if r == 1:
            return ZqApprox(self.field, self.M, (self.coeffs[0] * other.coeffs[0],))
        pm = self.modulus
        prod = [0] * (2 * r - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        f = self.field.f
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k] % pm
            if c:
                for i in range(r):
                    prod[k - r + i] -= c * f[i]
        return ZqApprox(self.field, self.M, tuple(prod[:r]))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = ZqApprox.scalar(self.field, self.M, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = ZqApprox.scalar(self.field, self.M, other)
        if not isinstance(other, ZqApprox):
            return NotImplemented
        return other.field == self.field and other.M == self.M and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.field, self.M, self.coeffs))

    def residue_field(self) -> int:
        """Reduction mod p as an F_q encoding."""
        return self.field.encode([c % self.p for c in self.coeffs])

    def is_unit(self) -> bool:
        return any(c % self.p for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inv(self) -> "ZqApprox":
        """Inverse of a unit by Newton iteration from the residue-field inverse."""
        if not self.is_unit():
            raise PrecisionError("inversion of a non-unit in Z_q")
        x = ZqApprox.lift(self.field, self.M, self.field.inv(self.residue_field()))
        prec = 1
        two = ZqApprox.scalar(self.field, self.M, 2)
        while prec < self.M:
            x = x * (two - self * x)
            prec *= 2
        return x

    def reduce(self, M: int) -> "ZqApprox":
        if M > self.M:
            raise PrecisionError("cannot raise precision by reduction")
        return ZqApprox(self.field, M, self.coeffs)

    def valuation(self) -> int:
        """p-adic valuation, capped at M for zero."""
        if self.is_zero():
            return self.M
        v = 0
        c = self.coeffs
        while all(x % self.p ** (v + 1) == 0 for x in c):
            v += 1
        return v

    def in_zp(self) -> bool:
        return not any(self.coeffs[1:])

    def to_padic(self) -> PadicApprox:
        if not self.in_zp():
            raise PrecisionError("element does not lie in Z_p")
        return PadicApprox(self.p, self.M, self.coeffs[0])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def zq_op(kind: str, operands: Sequence, M: int | None = None):
    """Dispatch a named ring operation on PadicApprox/ZqApprox operands."""
    if M is not None:
        for o in operands:
            if isinstance(o, (PadicApprox, ZqApprox)) and o.M != M:
                raise PrecisionError(f"operand precision {o.M} != requested {M}")
    if kind == "add":
        return operands[0] + operands[1]
    if kind == "sub":
        return operands[0] - operands[1]
    if kind == "mul":
        return operands[0] * operands[1]
    if kind == "neg":
        return -operands[0]
    if kind == "inv":
        return operands[0].inv()
    if kind == "pow":
        return operands[0] ** operands[1]
    raise ValueError(f"unknown ring operation {kind!r}")


# ---------------------------------------------------------------------------
# Morita's p-adic gamma function


def _advance(acc: int, lo: int, hi: int, p: int, pm: int, block: int = 32) -> int:
    """Multiply acc by every j in [lo, hi) with p not dividing j, mod pm."""
    step = block * p
    s = lo
    while s < hi:
        e = min(hi, s + step)
        first = s - s % p  # start of the residue cycle containing s
        for c in range(1, p):
            start = first + c
            if start < s:
                start += p
            if start < e:
                acc = acc * math.prod(range(start, e, p)) % pm
        s = e
    return acc


def _sweep_python(p: int, M: int, targets: Sequence[int]) -> list[int]:
    pm = p ** M
    out = []
    acc = 1
    cur = 1
    for n in targets:
        if n > cur:
            acc = _advance(acc, cur, n, p, pm)
            cur = n
        out.append(acc)
    return out


def _sweep_products(p: int, M: int, targets: Sequence[int]) -> list[int]:
    """Running products prod_{0<j<n, p∤j} j mod p**M at each sorted target n."""
    if not targets:
        return []
    if p ** (2 * M) < 2 ** 62:
        try:
            from ._kernel import sweep_products
        except ImportError:  # numba unavailable
            pass
        else:
            return sweep_products(p, p ** M, targets)
    return _sweep_python(p, M, targets)


def gamma_sweep(reps: Iterable[RationalLike], p: int, M: int) -> dict[Fraction, PadicApprox]:
    """Gamma_p at every rational in ``reps`` using one ascending product sweep."""
    xs = {as_rational(x) for x in reps}
    by_n: dict[int, list[Fraction]] = {}
    for x in xs:
        by_n.setdefault(representative(x, p, M), []).append(x)
    targets = sorted(by_n)
    prods = _sweep_products(p, M, targets)
    out = {}
    for n, prod in zip(targets, prods):
        val = 1 if n == 0 else (-prod if n % 2 else prod)
        g = PadicApprox(p, M, val)
        for x in by_n[n]:
            out[x] = g
    return out


def gamma_p(x: RationalLike, p: int, M: int) -> PadicApprox:
    """Morita's Gamma_p(x) mod p**M for x in Q with p not dividing its denominator."""
    return gamma_sweep([x], p, M)[as_rational(x)]


class GammaTable(Mapping):
    """Lazily extended Gamma_p table at fixed (p, M).

    Missing arguments are filled in batches by :func:`gamma_sweep`; an
    optional ``store`` (see :mod:`dwork_padic.cache`) persists results.
    """

    def __init__(self, p: int, M: int, store=None):
        self.p = p
        self.M = M
        self.store = store
        self._values: dict[Fraction, PadicApprox] = {}
        if store is not None:
            self._values.update(store.load(p, M))

    def ensure(self, xs: Iterable[RationalLike]) -> None:
        missing = {as_rational(x) for x in xs} - self._values.keys()
        if not missing:
            return
        self._values.update(gamma_sweep(missing, self.p, self.M))
        if self.store is not None:
            self.store.save(self.p, self.M, self._values)

    def __getitem__(self, x):
        x = as_rational(x)
        if x not in self._values:
            self.ensure([x])
        return self._values[x]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)


# ---------------------------------------------------------------------------


def teichmuller(field: FieldDesc, a: int, M: int) -> ZqApprox:
    """The (q-1)-th root of unity in Z_q congruent to a mod p."""
    if a == 0:
        raise ValueError("Teichmueller lift of zero")
    w = ZqApprox.lift(field, M, a)
    for _ in range(M + 1):
        nxt = w ** field.q
        if nxt == w:
            return w
        w = nxt
    raise AssertionError("Teichmueller iteration did not stabilise")


def teichmuller_powers(field: FieldDesc, M: int) -> list[ZqApprox]:
    """[omega(g)**k for k in range(q-1)] for the field generator g."""
    w = teichmuller(field, field.generator, M)
    out = [ZqApprox.scalar(field, M, 1)]
    for _ in range(field.q - 2):
        out.append(out[-1] * w)
    return out


def omega_power(field: FieldDesc, powers: Sequence[ZqApprox], a: int, k: int) -> ZqApprox:
    """omega**k(a) from a table of generator powers; zero at a == 0."""
    if a == 0:
        return ZqApprox.scalar(field, powers[0].M, 0)
    return powers[field.dlog(a) * k % (field.q - 1)]
