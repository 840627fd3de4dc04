"""Gauss sums g(omega-bar^a) through the Gross-Koblitz formula.

A Gauss sum lives in Q_p(pi) with pi**(p-1) = -p.  Everything we combine
folds back to integral powers of -p, so values are kept as a pair
``(grade, unit)`` meaning ``unit * pi**grade`` with ``unit`` in Z_q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldDesc
from .padic import GammaTable, PrecisionError, ZqApprox, frac, teichmuller_powers, omega_power


@dataclass(frozen=True)
class PiGraded:
    """``unit * pi**grade`` with 0 <= grade < p-1 once normalized.

    After folding, ``unit`` may be divisible by p (e.g. pi**(p-1) = -p).
    """

    grade: int
    unit: ZqApprox

    def __post_init__(self):
        if self.grade < 0:
            raise ValueError("negative pi-grade")
        e, u = self.grade, self.unit
        step = u.p - 1
        while e >= step:
            e -= step
            u = u * (-u.p)
        object.__setattr__(self, "grade", e)
        object.__setattr__(self, "unit", u)

    @classmethod
    def one(cls, field: FieldDesc, M: int) -> "PiGraded":
        return cls(0, ZqApprox.scalar(field, M, 1))

    def __mul__(self, other: "PiGraded") -> "PiGraded":
        return pi_mul(self, other)

    def __pow__(self, k: int) -> "PiGraded":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = PiGraded.one(self.unit.field, self.unit.M)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, z: ZqApprox) -> "PiGraded":
        return PiGraded(self.grade, self.unit * z)

    def to_json(self) -> dict:
        return {"grade": self.grade, "unit_coeffs": self.unit.to_json()}


def pi_mul(a: PiGraded, b: PiGraded) -> PiGraded:
    if a.unit.field != b.unit.field or a.unit.M != b.unit.M:
        raise PrecisionError("pi-graded operands differ in field or precision")
    return PiGraded(a.grade + b.grade, a.unit * b.unit)


def gauss_fractions(field: FieldDesc, a: int) -> list[Fraction]:
    """The fractional parts <a p^i/(q-1)> for i = 0..r-1."""
    q1 = field.q - 1
    return [frac(Fraction(a * field.p ** i, q1)) for i in range(field.r)]


def gauss_sum(field: FieldDesc, a: int, M: int, gamma: GammaTable | None = None) -> PiGraded:
    """g(omega-bar^a) = -pi^((p-1) sum <a p^i/(q-1)>) prod Gamma_p(<a p^i/(q-1)>)."""
    a %= field.q - 1
    fr = gauss_fractions(field, a)
    grade = (field.p - 1) * sum(fr)
    if grade.denominator != 1:
        raise ArithmeticError(f"non-integral Gauss sum grade {grade} for a={a}")
    if gamma is None:
        gamma = GammaTable(field.p, M)
    gamma.ensure(fr)
    unit = -1
    for x in fr:
        unit *= gamma[x].residue
    return PiGraded(int(grade), ZqApprox.scalar(field, M, unit))


def a_sum(instance, M: int, gamma: GammaTable | None = None) -> ZqApprox:
    """A = sum_a g(omega-bar^a)^d g(omega-bar^(-da)) omega-bar^(da)(-d lambda)."""
    field = instance.field
    d = instance.d
    lam = instance.lam
    if lam == 0:
        raise ValueError("the character-sum form of A needs lambda != 0")
    q1 = field.q - 1
    if gamma is None:
        gamma = GammaTable(field.p, M)
    needed = set()
    for a in range(q1):
        needed.update(gauss_fractions(field, a))
    gamma.ensure(needed)
    gs = [gauss_sum(field, a, M, gamma) for a in range(q1)]
    powers = teichmuller_powers(field, M)
    arg = field.mul(field.neg(field.from_int(d)), lam)
    total = ZqApprox.scalar(field, M, 0)
    for a in range(q1):
        term = gs[a] ** d * gs[-d * a % q1]
        if term.grade != 0:
            raise ArithmeticError(f"term a={a} does not fold to a power of -p")
        total = total + term.unit * omega_power(field, powers, arg, -d * a)
    return total
