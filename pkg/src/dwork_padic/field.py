"""Finite fields F_q = F_p[x]/(f) with tabulated discrete logarithms.

Elements are passed around as integer encodings ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``x**i``.  :class:`FqElem` wraps an encoding
together with its field for operator-style arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

DEFAULT_MAX_Q = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``q == p**r`` or None if q is not a prime power."""
    if q < 2:
        return None
    facs = prime_factors(q)
    if len(facs) != 1:
        return None
    p = facs[0]
    r = 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists with constant term first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _poly_trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility of ``f`` over F_p by trial division with monic polynomials."""
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    for deg in range(1, r // 2 + 1):
        for low in product(range(p), repeat=deg):
            g = list(low) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r.

    Candidates are ordered by their non-leading coefficients read from the
    highest degree down.
    """
    if r == 1:
        return (0, 1)
    for high_first in product(range(p), repeat=r):
        f = tuple(reversed(high_first)) + (1,)
        if f[0] != 0 and is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FieldError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """A concrete model of F_{p^r}.

    Construct with :func:`build_field`; the exp/log tables are filled in there.
    """

    p: int
    r: int
    f: tuple[int, ...]
    generator: int
    exp_table: tuple[int, ...] = dc_field(repr=False)
    log_table: tuple[int, ...] = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.r

    def __eq__(self, other):
        if not isinstance(other, FieldDesc):
            return NotImplemented
        return (self.p, self.r, self.f, self.generator) == (
            other.p, other.r, other.f, other.generator)

    def __hash__(self):
        return hash((self.p, self.r, self.f, self.generator))

    # encoding <-> coefficients

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.r:
            raise FieldError(f"too many coefficients for F_{self.q}")
        enc = 0
        for c in reversed(coeffs):
            enc = enc * self.p + c % self.p
        return enc

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element encoding of F_{self.q}")
        return a

    # arithmetic on encodings

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self.r == 1:
            return -a % self.p
        return self.encode([-x for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        lt = self.log_table
        return self.exp_table[(lt[a] + lt[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.exp_table[-self.log_table[a] % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero in F_q")
            return 1 if k == 0 else 0
        return self.exp_table[self.log_table[a] * k % (self.q - 1)]

    def dlog(self, a: int) -> int:
        """Exponent k in [0, q-2] with generator**k == a."""
        if a == 0:
            raise FieldError("discrete log of zero")
        return self.log_table[a]

    def elements(self) -> range:
        return range(self.q)

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        return n // _gcd(n, self.log_table[a])

    def generators(self) -> Iterator[int]:
        """All generators of F_q^x in ascending encoding."""
        n = self.q - 1
        for a in range(1, self.q):
            if _gcd(self.log_table[a], n) == 1:
                yield a

    def elem(self, a: int) -> "FqElem":
        return FqElem(self, self.check(a))

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "f": list(self.f), "generator": self.generator}

    @cached_property
    def _np_tables(self):
        import numpy as np

        q = self.q
        exp = np.array(self.exp_table, dtype=np.int64)
        log = np.array(self.log_table, dtype=np.int64)
        enc = np.arange(q, dtype=np.int64)
        digits = np.stack([(enc // self.p ** i) % self.p for i in range(self.r)])
        return exp, log, digits

    def add_table(self):
        """q x q addition table as a numpy array (small fields only)."""
        import numpy as np

        _, _, digits = self._np_tables
        p = self.p
        tab = np.zeros((self.q, self.q), dtype=np.int64)
        for i in range(self.r):
            tab += ((digits[i][:, None] + digits[i][None, :]) % p) * p ** i
        return tab

    def mul_table(self):
        """q x q multiplication table as a numpy array (small fields only)."""
        import numpy as np

        exp, log, _ = self._np_tables
        q = self.q
        s = (log[:, None] + log[None, :]) % (q - 1)
        tab = exp[s]
        tab[0, :] = 0
        tab[:, 0] = 0
        return tab


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def poly_mulmod(a: int, b: int, p: int, r: int, f: Sequence[int]) -> int:
    """Multiply two encodings by schoolbook polynomial arithmetic mod (p, f)."""
    ca = [(a // p ** i) % p for i in range(r)]
    cb = [(b // p ** i) % p for i in range(r)]
    prod_ = [0] * (2 * r - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                prod_[i + j] += x * y
    red = _poly_mod(prod_, f, p)
    enc = 0
    for c in reversed(red):
        enc = enc * p + c
    return enc


def _poly_pow(a: int, k: int, p: int, r: int, f: Sequence[int]) -> int:
    result = 1
    while k:
        if k & 1:
            result = poly_mulmod(result, a, p, r, f)
        a = poly_mulmod(a, a, p, r, f)
        k >>= 1
    return result


def find_generator(p: int, r: int, f: Sequence[int], skip: int = 0) -> int:
    """Smallest-encoding element of order q-1 (or the ``skip``-th next one)."""
    q = p ** r
    n = q - 1
    ells = prime_factors(n)
    for a in range(1, q):
        if all(_poly_pow(a, n // ell, p, r, f) != 1 for ell in ells):
            if skip == 0:
                return a
            skip -= 1
    raise FieldError("generator not found")


def build_field(p: int, r: int = 1, generator: int | None = None,
                max_q: int = DEFAULT_MAX_Q) -> FieldDesc:
    """Build F_{p^r} with the smallest irreducible modulus and generator.

    ``generator`` overrides the default choice; it must have order q-1.
    """
    if p % 2 == 0 or not is_prime(p):
        raise FieldError(f"p={p} is not an odd prime")
    if r < 1:
        raise FieldError(f"extension degree r={r} must be >= 1")
    q = p ** r
    if q > max_q:
        raise FieldError(f"q={q} exceeds the tabulation bound {max_q}")
    f = smallest_irreducible(p, r)
    if generator is None:
        g = find_generator(p, r, f)
    else:
        g = generator
        if not 0 < g < q:
            raise FieldError(f"generator {g} is not a nonzero element of F_{q}")
    exp = [0] * (q - 1)
    log = [-1] * q
    x = 1
    for k in range(q - 1):
        if log[x] != -1:
            raise FieldError(f"{g} does not generate F_{q}^x")
        exp[k] = x
        log[x] = k
        x = poly_mulmod(x, g, p, r, f)
    if x != 1:
        raise FieldError(f"{g} does not generate F_{q}^x")
    return FieldDesc(p, r, f, g, tuple(exp), tuple(log))


def enumerate_field(field: FieldDesc) -> list["FqElem"]:
    return [FqElem(field, a) for a in range(field.q)]


@dataclass(frozen=True)
class FqElem:
    field: FieldDesc
    encoding: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.encoding)

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.encoding
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FqElem(self.field, self.field.add(self.encoding, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FqElem(self.field, self.field.sub(self.encoding, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FqElem(self.field, self.field.sub(b, self.encoding))

    def __mul__(self, other):
        b = self._other(other)
        return FqElem(self.field, self.field.mul(self.encoding, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.encoding))

    def __pow__(self, k: int):
        return FqElem(self.field, self.field.pow(self.encoding, k))

    def __truediv__(self, other):
        b = self._other(other)
        return FqElem(self.field, self.field.mul(self.encoding, self.field.inv(b)))

    def inv(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.encoding))

    def dlog(self) -> int:
        return self.field.dlog(self.encoding)

    def __bool__(self):
        return self.encoding != 0

    def __int__(self):
        return self.encoding

    def __repr__(self):
        return f"FqElem({self.encoding} in F_{self.field.q})"


def fq_op(kind: str, operands: Sequence[int], field: FieldDesc) -> int:
    """Dispatch a named field operation on integer encodings."""
    ops = {
        "add": field.add,
        "sub": field.sub,
        "mul": field.mul,
        "inv": field.inv,
        "neg": field.neg,
        "pow": field.pow,
    }
    try:
        fn = ops[kind]
    except KeyError:
        raise FieldError(f"unknown field operation {kind!r}") from None
    return fn(*operands)
