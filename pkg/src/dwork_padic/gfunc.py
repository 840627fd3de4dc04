"""McCarthy's p-adic hypergeometric function nGn over F_q.

For parameters a_1..a_n, b_1..b_n in Q ∩ Z_p and t in F_q,

    nGn[a; b | t] = -1/(q-1) * sum_{j=0}^{q-2} (-1)^{jn} omega-bar^j(t)
        * prod_{i,k} (-p)^{-floor(<a_i p^k> - j p^k/(q-1)) - floor(<-b_i p^k> + j p^k/(q-1))}
        * Gamma_p(<(a_i - j/(q-1)) p^k>) / Gamma_p(<a_i p^k>)
        * Gamma_p(<(-b_i + j/(q-1)) p^k>) / Gamma_p(<-b_i p^k>)

The t-independent part of every summand is computed once per
(field, a, b, precision) by :class:`GEvaluator`; only omega-bar^j(t) varies
with the argument.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .field import FieldDesc
from .padic import (
    GammaTable,
    PadicApprox,
    PrecisionError,
    ZqApprox,
    as_rational,
    frac,
    floor,
    teichmuller_powers,
)


@dataclass(frozen=True)
class GSpec:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    t: int
    field: FieldDesc

    def __post_init__(self):
        a = tuple(as_rational(x) for x in self.a)
        b = tuple(as_rational(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise ValueError("need equally many upper and lower parameters, at least one")
        p = self.field.p
        for x in a + b:
            if x.denominator % p == 0:
                raise ValueError(f"parameter {x} is not a {p}-adic integer")
        self.field.check(self.t)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "t": self.t,
            "p": self.field.p,
            "r": self.field.r,
        }


@dataclass(frozen=True)
class ValuedZq:
    """The value ``(-p)**m * u`` with ``u`` known modulo p**u.M.

    The absolute precision of the represented number is p**(m + u.M).
    """

    m: int
    u: ZqApprox

    @property
    def precision(self) -> int:
        return self.m + self.u.M

    def is_zero(self) -> bool:
        return self.u.is_zero()

    def normalized(self) -> "ValuedZq":
        """Move factors of p from the unit into the exponent."""
        m, u = self.m, self.u
        if u.is_zero():
            return self
        p = u.p
        while not u.is_unit():
            u = ZqApprox(u.field, u.M - 1, tuple(-(c // p) for c in u.coeffs))
            m += 1
        return ValuedZq(m, u)

    def to_zq(self, M: int) -> ZqApprox:
        """The value as an element of Z_q mod p**M."""
        v = self.normalized()
        if v.precision < M:
            raise PrecisionError(f"value only known to p^{v.precision}, asked for p^{M}")
        field = v.u.field
        if v.is_zero():
            return ZqApprox.scalar(field, M, 0)
        if v.m < 0:
            raise ArithmeticError(f"value has negative valuation {v.m}")
        scale = (-field.p) ** v.m
        return ZqApprox(field, M, tuple(c * scale for c in v.u.coeffs))

    def congruent(self, other: "ValuedZq", M: int) -> bool:
        """Whether self and other agree modulo p**M (absolute)."""
        if min(self.precision, other.precision) < M:
            raise PrecisionError("operands are not known to the requested precision")
        mm = min(self.m, other.m)
        rel = M - mm
        if rel <= 0:
            return True
        p = self.u.p
        pr = p ** rel
        a = [c * (-p) ** (self.m - mm) % pr for c in self.u.coeffs]
        b = [c * (-p) ** (other.m - mm) % pr for c in other.u.coeffs]
        return a == b

    def to_json(self) -> dict:
        return {"grade": self.m, "coeffs": self.u.to_json()}


def default_slack(n: int, r: int) -> int:
    return n * r


class GEvaluator:
    """Precomputed t-independent summands of nGn at working precision ``Mw``.

    ``terms[j] = (m_j, c_j)`` where summand j equals
    ``(-p)**m_j * c_j * omega-bar^j(t)`` and c_j is a residue mod p**Mw
    (sign (-1)^{jn} included).
    """

    def __init__(self, field: FieldDesc, a: Sequence, b: Sequence, Mw: int,
                 gamma: GammaTable | None = None):
        self.field = field
        self.a = tuple(as_rational(x) for x in a)
        self.b = tuple(as_rational(x) for x in b)
        self.n = len(self.a)
        self.Mw = Mw
        p, r, q = field.p, field.r, field.q
        self.gamma = gamma if gamma is not None else GammaTable(p, Mw)
        self.gamma.ensure(self.gamma_arguments())
        pm = p ** Mw
        G = self.gamma

        base = 1
        A = [[frac(ai * p ** k) for k in range(r)] for ai in self.a]
        B = [[frac(-bi * p ** k) for k in range(r)] for bi in self.b]
        for i in range(self.n):
            for k in range(r):
                base = base * G[A[i][k]].residue * G[B[i][k]].residue % pm
        base_inv = pow(base, -1, pm)

        self.terms: list[tuple[int, int]] = []
        for j in range(q - 1):
            m = 0
            c = base_inv
            for i in range(self.n):
                for k in range(r):
                    J = Fraction(j * p ** k, q - 1)
                    e = -floor(A[i][k] - J) - floor(B[i][k] + J)
                    if e not in (-1, 0, 1):
                        raise ArithmeticError(f"(-p)-exponent {e} out of range at j={j}")
                    m += e
                    c = c * G[frac(A[i][k] - J)].residue % pm
                    c = c * G[frac(B[i][k] + J)].residue % pm
            if (j * self.n) % 2:
                c = -c % pm
            self.terms.append((m, c))
        self._powers = None

    def gamma_arguments(self) -> set[Fraction]:
        p, r, q = self.field.p, self.field.r, self.field.q
        out = set()
        for x in self.a:
            for k in range(r):
                A = frac(x * p ** k)
                out.add(A)
                for j in range(q - 1):
                    out.add(frac(A - Fraction(j * p ** k, q - 1)))
        for x in self.b:
            for k in range(r):
                B = frac(-x * p ** k)
                out.add(B)
                for j in range(q - 1):
                    out.add(frac(B + Fraction(j * p ** k, q - 1)))
        return out

    @property
    def powers(self) -> list[ZqApprox]:
        if self._powers is None:
            self._powers = teichmuller_powers(self.field, self.Mw)
        return self._powers

    def omega_bar(self, j: int, t: int) -> ZqApprox:
        field = self.field
        if t == 0:
            return ZqApprox.scalar(field, self.Mw, 0)
        return self.powers[-j * field.dlog(t) % (field.q - 1)]

    def term(self, j: int, t: int) -> ValuedZq:
        m, c = self.terms[j]
        return ValuedZq(m, self.omega_bar(j, t) * c)

    def value(self, t: int, order: Iterable[int] | None = None) -> ValuedZq:
        """-1/(q-1) times the sum of all summands at argument t."""
        field = self.field
        Mw = self.Mw
        if t == 0:
            return ValuedZq(0, ZqApprox.scalar(field, Mw, 0))
        js = range(field.q - 1) if order is None else list(order)
        m_min = min(m for m, _ in self.terms)
        p = field.p
        total = ZqApprox.scalar(field, Mw, 0)
        for j in js:
            m, c = self.terms[j]
            total = total + self.omega_bar(j, t) * (c * (-p) ** (m - m_min))
        # q - 1 is a unit: q - 1 = -1 mod p
        scale = -pow(field.q - 1, -1, p ** Mw)
        return ValuedZq(m_min, total * scale)


_gamma_tables: dict[tuple[int, int], GammaTable] = {}
_gamma_store = None


def set_gamma_store(store) -> None:
    """Route Gamma_p tables through a persistent store (or None to disable)."""
    global _gamma_store
    _gamma_store = store
    _gamma_tables.clear()
    _evaluator.cache_clear()


def shared_gamma_table(p: int, M: int) -> GammaTable:
    key = (p, M)
    if key not in _gamma_tables:
        _gamma_tables[key] = GammaTable(p, M, store=_gamma_store)
    return _gamma_tables[key]


@functools.lru_cache(maxsize=64)
def _evaluator(field: FieldDesc, a: tuple, b: tuple, Mw: int) -> GEvaluator:
    return GEvaluator(field, a, b, Mw, shared_gamma_table(field.p, Mw))


def evaluator(spec: GSpec, Mw: int) -> GEvaluator:
    return _evaluator(spec.field, spec.a, spec.b, Mw)


def g_term(spec: GSpec, j: int, Mw: int) -> ValuedZq:
    """Summand j of the defining sum (without the -1/(q-1) prefactor)."""
    if not 0 <= j < spec.field.q - 1:
        raise ValueError(f"j={j} outside [0, q-2]")
    return evaluator(spec, Mw).term(j, spec.t)


def evaluate_G(spec: GSpec, M: int, slack: int | None = None,
               order: Iterable[int] | None = None) -> ValuedZq:
    """nGn[a; b | t] with absolute precision at least p**M."""
    if slack is None:
        slack = default_slack(spec.n, spec.field.r)
    ev = evaluator(spec, M + slack)
    val = ev.value(spec.t, order)
    if val.precision < M:
        raise PrecisionError(
            f"grade slack {slack} too small: result only known to p^{val.precision}")
    return val


def dwork_spec(d: int, field: FieldDesc, lam: int) -> GSpec:
    """The (d-1)G(d-1)[1/d..(d-1)/d; 0..0 | lambda^d] parameters."""
    a = tuple(Fraction(h, d) for h in range(1, d))
    b = (Fraction(0),) * (d - 1)
    return GSpec(a, b, field.pow(lam, d), field)


def dwork_G(instance, M: int, slack: int | None = None) -> PadicApprox:
    """The G-value of the point-count formula as an element of Z_p mod p**M."""
    spec = dwork_spec(instance.d, instance.field, instance.lam)
    z = evaluate_G(spec, M, slack).to_zq(M)
    if not z.in_zp():
        raise ArithmeticError(f"G-value {z.coeffs} is not in Z_p")
    return z.to_padic()
