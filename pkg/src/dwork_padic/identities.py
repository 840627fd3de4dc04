"""Exhaustive checks of the character-sum and Gamma_p identities behind the
point-count formula.

Each check sweeps its whole parameter range and returns an
:class:`IdentityReport`; a non-empty ``failures`` list pinpoints the layer
(integers, Gamma_p, Gauss sums, character sums) that is broken.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .field import FieldDesc
from .gauss import PiGraded, a_sum, gauss_sum
from .padic import GammaTable, ZqApprox, floor, frac, teichmuller, teichmuller_powers, omega_power


@dataclass
class IdentityReport:
    name: str
    ranges: dict[str, Any]
    cases: int = 0
    failures: list[dict[str, Any]] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **params) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(params)

    def to_json(self) -> dict[str, Any]:
        return {
            "identity": self.name,
            "ranges": self.ranges,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed,
        }


def _field_range(field: FieldDesc) -> dict[str, int]:
    return {"p": field.p, "r": field.r, "q": field.q}


def check_orthogonality(field: FieldDesc, M: int) -> IdentityReport:
    """sum_x chi(x) and sum_chi chi(x) over all characters omega^m of F_q."""
    q = field.q
    rep = IdentityReport("orthogonality", {**_field_range(field), "M": M})
    powers = teichmuller_powers(field, M)
    zero = ZqApprox.scalar(field, M, 0)
    for m in range(q - 1):
        s = zero
        for x in range(q):
            s = s + omega_power(field, powers, x, m)
        rep.record(s == (q - 1 if m == 0 else 0), kind="sum_x", m=m)
    for x in range(q):
        s = zero
        for m in range(q - 1):
            s = s + omega_power(field, powers, x, m)
        rep.record(s == (q - 1 if x == 1 else 0), kind="sum_chi", x=x)
    return rep


def check_gauss_product(field: FieldDesc, M: int) -> IdentityReport:
    """g(omega-bar^k) g(omega-bar^-k) = q omega-bar^k(-1) for 1 <= k <= q-2."""
    q = field.q
    rep = IdentityReport("gauss_product", {**_field_range(field), "M": M, "k": [1, q - 2]})
    gamma = GammaTable(field.p, M)
    for k in range(1, q - 1):
        prod = gauss_sum(field, k, M, gamma) * gauss_sum(field, -k, M, gamma)
        expected = PiGraded(0, ZqApprox.scalar(field, M, q * (-1) ** k))
        rep.record(prod == expected, k=k)
    return rep


def check_gamma_product(field: FieldDesc, t: int, M: int) -> IdentityReport:
    """The two Gamma_p multiplication identities with Teichmueller factors.

    For 0 <= j <= q-2:

      omega(t^(tj)) prod_i Gamma_p(<t p^i j/(q-1)>) prod_{h=1}^{t-1} Gamma_p(<h p^i/t>)
        = prod_i prod_{h=0}^{t-1} Gamma_p(<p^i h/t + p^i j/(q-1)>)

      omega(t^(-tj)) prod_i Gamma_p(<-t p^i j/(q-1)>) prod_{h=1}^{t-1} Gamma_p(<h p^i/t>)
        = prod_i prod_{h=0}^{t-1} Gamma_p(<p^i (1+h)/t - p^i j/(q-1)>)
    """
    p, r, q = field.p, field.r, field.q
    if t < 1 or t % p == 0:
        raise ValueError(f"t={t} must be a positive integer prime to p={p}")
    rep = IdentityReport("gamma_product", {**_field_range(field), "M": M, "t": t,
                                           "j": [0, q - 2]})
    gamma = GammaTable(p, M)
    args = set()
    for j in range(q - 1):
        for i in range(r):
            pi = p ** i
            J = Fraction(pi * j, q - 1)
            args.add(frac(t * J))
            args.add(frac(-t * J))
            for h in range(t):
                args.add(frac(Fraction(h * pi, t)))
                args.add(frac(Fraction(pi * h, t) + J))
                args.add(frac(Fraction(pi * (1 + h), t) - J))
    gamma.ensure(args)

    def g(x: Fraction) -> ZqApprox:
        return ZqApprox.scalar(field, M, gamma[x].residue)

    w_t = teichmuller(field, field.from_int(t), M)
    for j in range(q - 1):
        lhs1 = w_t ** (t * j)
        lhs2 = w_t ** (-t * j)
        rhs1 = rhs2 = ZqApprox.scalar(field, M, 1)
        for i in range(r):
            pi = p ** i
            J = Fraction(pi * j, q - 1)
            lhs1 = lhs1 * g(frac(t * J))
            lhs2 = lhs2 * g(frac(-t * J))
            for h in range(1, t):
                lhs1 = lhs1 * g(frac(Fraction(h * pi, t)))
                lhs2 = lhs2 * g(frac(Fraction(h * pi, t)))
            for h in range(t):
                rhs1 = rhs1 * g(frac(Fraction(pi * h, t) + J))
                rhs2 = rhs2 * g(frac(Fraction(pi * (1 + h), t) - J))
        rep.record(lhs1 == rhs1, equation="plus", j=j)
        rep.record(lhs2 == rhs2, equation="minus", j=j)
    return rep


def floor_identity_sides(d: int, p: int, q: int, a: int, i: int) -> tuple[int, int]:
    """Both sides of the floor identity used to collapse the (-p)-exponents."""
    x = Fraction(a * p ** i, q - 1)
    lhs = d * floor(x) + floor(-d * x)
    rhs = (d - 1) * floor(x) + sum(floor(frac(Fraction(h * p ** i, d)) - x)
                                   for h in range(1, d)) - 1
    return lhs, rhs


def check_floor_identity(d: int, field: FieldDesc) -> IdentityReport:
    p, r, q = field.p, field.r, field.q
    if d == p or q % d == 1:
        raise ValueError(f"floor identity needs d ≠ p and q ≢ 1 (mod d); got d={d}, q={q}")
    rep = IdentityReport("floor_identity", {**_field_range(field), "d": d,
                                            "a": [1, q - 2], "i": [0, r - 1]})
    for a in range(1, q - 1):
        for i in range(r):
            lhs, rhs = floor_identity_sides(d, p, q, a, i)
            rep.record(lhs == rhs, a=a, i=i, lhs=lhs, rhs=rhs)
    return rep


def check_reflection(field: FieldDesc, M: int) -> IdentityReport:
    """prod_i Gamma_p(<a p^i/(q-1)>) Gamma_p(<(1 - a/(q-1)) p^i>) = (-1)^r omega-bar^a(-1)."""
    p, r, q = field.p, field.r, field.q
    rep = IdentityReport("reflection", {**_field_range(field), "M": M, "a": [1, q - 2]})
    gamma = GammaTable(p, M)
    args = set()
    for a in range(1, q - 1):
        for i in range(r):
            args.add(frac(Fraction(a * p ** i, q - 1)))
            args.add(frac((1 - Fraction(a, q - 1)) * p ** i))
    gamma.ensure(args)
    pm = p ** M
    minus_one = teichmuller(field, field.neg(1), M)
    for a in range(1, q - 1):
        prod = 1
        for i in range(r):
            prod *= gamma[frac(Fraction(a * p ** i, q - 1))].residue
            prod *= gamma[frac((1 - Fraction(a, q - 1)) * p ** i)].residue
        expected = minus_one ** (-a) * (-1) ** r
        rep.record(ZqApprox.scalar(field, M, prod % pm) == expected, a=a)
    return rep


def asum_precision(d: int, q: int, p: int) -> int:
    """Smallest M with p^M > 2 q^(d+1)."""
    M = 1
    while p ** M <= 2 * q ** (d + 1):
        M += 1
    return M


def check_asum_consistency(instance, M: int | None = None, budget: int | None = None) -> IdentityReport:
    """q N_A = q^d + A - (1 - q) with N_A by enumeration and A as a Gauss-sum series."""
    from .dwork import DEFAULT_BUDGET, brute_count_affine

    field, d = instance.field, instance.d
    q, p = field.q, field.p
    if M is None:
        M = asum_precision(d, q, p)
    rep = IdentityReport("asum_consistency", {**_field_range(field), "d": d,
                                              "lambda": instance.lam, "M": M})
    n_aff = brute_count_affine(instance, budget or DEFAULT_BUDGET)
    if instance.lam == 0:
        A = ZqApprox.scalar(field, M, 1 - q)
    else:
        A = a_sum(instance, M)
    lhs = ZqApprox.scalar(field, M, q * n_aff)
    rhs = A + (q ** d - (1 - q))
    rep.record(lhs == rhs, N_affine=n_aff, A=A.to_json())
    return rep
