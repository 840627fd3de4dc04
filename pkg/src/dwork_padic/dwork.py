"""Point counts on Dwork hypersurfaces x_1^d + ... + x_d^d = d*lambda*x_1...x_d.

Three routes to #X_lambda^d(F_q): exhaustive enumeration (the ground truth),
the corrected closed formula (q^(d-1)-1)/(q-1) - G, and the earlier
conjectured formula (q^(d-1)-1)/(q-1) + 1/(q-1) + G, which is wrong.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Any

import numpy as np

from .field import FieldDesc, is_prime
from .gfunc import GSpec, dwork_G, dwork_spec, evaluate_G, ValuedZq
from .padic import PadicApprox, ZqApprox, teichmuller

DEFAULT_BUDGET = 3 * 10 ** 8
_SUFFIX_CHUNK = 2 ** 20


class InstanceError(ValueError):
    """The parameters violate a hypothesis of the counting formula."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DworkInstance:
    d: int
    field: FieldDesc
    lam: int

    def __post_init__(self):
        d, q, p = self.d, self.field.q, self.field.p
        if d % 2 == 0 or not is_prime(d):
            raise InstanceError(f"d={d} violates the hypothesis: d an odd prime")
        if p == d:
            raise InstanceError(
                f"p={p}, d={d} violates the hypothesis p ≠ d "
                f"(requires q ≢ 1 (mod d) and p ≠ d)")
        if q % d == 1:
            raise InstanceError(
                f"q={q} ≡ 1 (mod {d}) violates the hypothesis q ≢ 1 (mod d)")
        self.field.check(self.lam)

    @property
    def q(self) -> int:
        return self.field.q

    def base_count(self) -> int:
        """(q^(d-1) - 1)/(q - 1), the count at lambda = 0."""
        q = self.q
        return (q ** (self.d - 1) - 1) // (q - 1)


def auto_precision(d: int, q: int, p: int) -> int:
    """Smallest M with p^M > 2 (q^(d-1)-1)/(q-1)."""
    bound = 2 * (q ** (d - 1) - 1) // (q - 1)
    M = 1
    while p ** M <= bound:
        M += 1
    return M


# ---------------------------------------------------------------------------
# enumeration


def _suffix_arrays(field: FieldDesc, d: int, s: int, add, mul, powd):
    """Sum of d-th powers and product over all s-tuples, as encodings."""
    xs = np.arange(field.q, dtype=np.int64)
    S = powd.copy()
    P = xs.copy()
    for _ in range(s - 1):
        S = add[S[:, None], powd[None, :]].ravel()
        P = mul[P[:, None], xs[None, :]].ravel()
    return S, P


def _count_prefixes(field: FieldDesc, d: int, lam: int, s: int, firsts) -> int:
    add = field.add_table()
    mul = field.mul_table()
    powd = np.array([field.pow(x, d) for x in range(field.q)], dtype=np.int64)
    c = field.mul(field.from_int(d), lam)
    S_suf, P_suf = _suffix_arrays(field, d, s, add, mul, powd)
    total = 0
    rest = d - s - 1
    for x1 in firsts:
        for tail in itertools.product(range(field.q), repeat=rest):
            S_pre = int(powd[x1])
            P_pre = x1
            for x in tail:
                S_pre = field.add(S_pre, int(powd[x]))
                P_pre = field.mul(P_pre, x)
            lhs = add[S_pre][S_suf]
            rhs = mul[field.mul(c, P_pre)][P_suf]
            total += int(np.count_nonzero(lhs == rhs))
    return total


def _count_worker(args):
    p, r, g, d, lam, s, firsts = args
    from .field import build_field

    return _count_prefixes(build_field(p, r, generator=g), d, lam, s, firsts)


def brute_count_affine(instance: DworkInstance, budget: int = DEFAULT_BUDGET,
                       workers: int = 1) -> int:
    """Exact number of affine solutions in F_q^d, by visiting every d-tuple."""
    field, d = instance.field, instance.d
    q = field.q
    if q ** d > budget:
        raise BudgetExceeded(f"q^d = {q ** d} tuples exceeds the budget {budget}")
    s = 1
    while s < d - 1 and q ** (s + 1) <= _SUFFIX_CHUNK:
        s += 1
    firsts = list(range(q))
    if workers <= 1:
        return _count_prefixes(field, d, instance.lam, s, firsts)
    chunks = [firsts[i::workers] for i in range(workers)]
    jobs = [(field.p, field.r, field.generator, d, instance.lam, s, c) for c in chunks if c]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_worker, jobs))


def projective_count_from_affine(n_affine: int, q: int) -> int:
    if (n_affine - 1) % (q - 1):
        raise ArithmeticError(f"N_affine - 1 = {n_affine - 1} not divisible by q - 1 = {q - 1}")
    return (n_affine - 1) // (q - 1)


def projective_count(instance: DworkInstance, budget: int = DEFAULT_BUDGET,
                     workers: int = 1) -> int:
    return projective_count_from_affine(brute_count_affine(instance, budget, workers), instance.q)


def curve_count(field: FieldDesc, lam: int, budget: int = DEFAULT_BUDGET) -> int:
    """#{(x, y) in F_q^2 : x^3 + y^3 + 1 = 3 lambda x y}."""
    q = field.q
    if q % 3 == 1:
        raise InstanceError(f"q={q} ≡ 1 (mod 3) violates the hypothesis q ≢ 1 (mod 3)")
    if q * q > budget:
        raise BudgetExceeded(f"q^2 = {q * q} exceeds the budget {budget}")
    add = field.add_table()
    mul = field.mul_table()
    cube = np.array([field.pow(x, 3) for x in range(q)], dtype=np.int64)
    xs = np.arange(q, dtype=np.int64)
    lhs = add[add[cube[:, None], cube[None, :]], 1]
    c = field.mul(field.from_int(3), lam)
    rhs = mul[c][mul[xs[:, None], xs[None, :]]]
    return int(np.count_nonzero(lhs == rhs))


# ---------------------------------------------------------------------------
# formulas


def theorem_count(instance: DworkInstance, M: int, slack: int | None = None) -> PadicApprox:
    """(q^(d-1)-1)/(q-1) - G mod p^M."""
    G = dwork_G(instance, M, slack)
    return instance.base_count() - G


def conjecture_count(instance: DworkInstance, M: int, slack: int | None = None) -> PadicApprox:
    """(p^(d-1)-1)/(p-1) + 1/(p-1) + G mod p^M, with 1/(p-1) read p-adically."""
    field = instance.field
    if field.r != 1:
        raise InstanceError("the conjectured formula is stated over F_p only (r = 1)")
    p = field.p
    G = dwork_G(instance, M, slack)
    return G + instance.base_count() + PadicApprox(p, M, p - 1).inv()


@dataclass(frozen=True)
class CountReport:
    d: int
    p: int
    r: int
    lam: int
    M: int
    N_affine: int
    projective: int
    G_residue: int
    theorem_residue: int
    conjecture_residue: int | None
    match_theorem: bool
    match_conjecture: bool | None

    @property
    def ok(self) -> bool:
        return self.match_theorem

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        return out


def verify_theorem(instance: DworkInstance, M: int | None = None, *,
                   slack: int | None = None, budget: int = DEFAULT_BUDGET,
                   workers: int = 1) -> CountReport:
    field = instance.field
    p, q = field.p, field.q
    if M is None:
        M = auto_precision(instance.d, q, p)
    n_aff = brute_count_affine(instance, budget, workers)
    proj = projective_count_from_affine(n_aff, q)
    G = dwork_G(instance, M, slack)
    thm = instance.base_count() - G
    conj = None
    if field.r == 1:
        conj = G + instance.base_count() + PadicApprox(p, M, p - 1).inv()
    pm = p ** M
    return CountReport(
        d=instance.d, p=p, r=field.r, lam=instance.lam, M=M,
        N_affine=n_aff, projective=proj,
        G_residue=G.residue,
        theorem_residue=thm.residue,
        conjecture_residue=None if conj is None else conj.residue,
        match_theorem=thm.residue == proj % pm,
        match_conjecture=None if conj is None else conj.residue == proj % pm,
    )


# ---------------------------------------------------------------------------
# the 2G2 transformation for d = 3


@dataclass(frozen=True)
class CorollaryReport:
    p: int
    r: int
    lam: int
    M: int | None
    status: str
    reason: str | None = None
    lhs_residue: list[int] | None = None
    rhs_residue: list[int] | None = None
    curve_count: int | None = None
    curve_residue: int | None = None
    match: bool | None = None
    match_curve: bool | None = None

    @property
    def ok(self) -> bool:
        return self.status == "skipped" or bool(self.match and self.match_curve)

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        return out


def corollary_skip_reason(field: FieldDesc, lam: int) -> str | None:
    if field.p < 5:
        return f"p={field.p} < 5"
    if field.q % 3 == 1:
        return f"q={field.q} ≡ 1 (mod 3)"
    if lam == 0:
        return "lambda = 0"
    if field.pow(lam, 3) == 1:
        return "lambda^3 = 1"
    return None


def quadratic_character(field: FieldDesc, x: int, M: int) -> int:
    """phi(x) = omega^((q-1)/2)(x) as an integer in {-1, 0, 1}."""
    if x == 0:
        return 0
    w = teichmuller(field, x, M) ** ((field.q - 1) // 2)
    if w == 1:
        return 1
    if w == -1:
        return -1
    raise ArithmeticError("omega^((q-1)/2) is not ±1")


def corollary_sides(field: FieldDesc, lam: int, M: int,
                    slack: int | None = None) -> tuple[ZqApprox, ZqApprox | None]:
    """(LHS, RHS) of the 2G2 transformation mod p^M; RHS None if not integral."""
    lhs = evaluate_G(dwork_spec(3, field, lam), M, slack).to_zq(M)
    t2 = field.inv(field.pow(lam, 3))
    half = Fraction(1, 2)
    spec2 = GSpec((half, half), (Fraction(1, 6), Fraction(5, 6)), t2, field)
    v = evaluate_G(spec2, M, slack)
    arg = field.mul(field.neg(field.from_int(3)), lam)
    sign = quadratic_character(field, arg, M) * (-1) ** field.r
    scaled = ValuedZq(v.m + field.r, v.u * sign)  # q = (-p)^r (-1)^r
    try:
        rhs = scaled.to_zq(M)
    except ArithmeticError:
        rhs = None
    return lhs, rhs


def verify_corollary(field: FieldDesc, lam: int, M: int | None = None, *,
                     slack: int | None = None, budget: int = DEFAULT_BUDGET) -> CorollaryReport:
    reason = corollary_skip_reason(field, lam)
    if reason is not None:
        return CorollaryReport(field.p, field.r, lam, M, "skipped", reason)
    q, p = field.q, field.p
    if M is None:
        M = auto_precision(3, q, p)
    lhs, rhs = corollary_sides(field, lam, M, slack)
    cc = curve_count(field, lam, budget)
    expected = ZqApprox.scalar(field, M, (q * q - 1) // (q - 1) - 1 - cc)
    return CorollaryReport(
        p=p, r=field.r, lam=lam, M=M, status="checked",
        lhs_residue=list(lhs.coeffs),
        rhs_residue=None if rhs is None else list(rhs.coeffs),
        curve_count=cc,
        curve_residue=expected.coeffs[0],
        match=rhs is not None and lhs == rhs,
        match_curve=lhs == expected,
    )
