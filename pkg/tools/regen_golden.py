"""Regenerate tests/fixtures/golden_counts.json by naive enumeration.

The counts are produced by a per-tuple Python loop over F_q^d using
schoolbook polynomial multiplication (no log tables, no numpy), so they are
independent of the vectorised counter in dwork_padic.dwork.

    python tools/regen_golden.py
"""
import itertools
import json
from pathlib import Path

from dwork_padic.field import build_field, poly_mulmod

INSTANCES = [
    (3, 5, 1, "all"),
    (5, 7, 1, "all"),
    (7, 3, 1, "all"),
    (5, 3, 2, "all"),
    (3, 11, 1, "all"),
    (3, 5, 3, [0, 1, 3, 7, "g"]),
]


def naive_count(field, d, lam):
    p, r, q, f = field.p, field.r, field.q, field.f

    def mul(a, b):
        return poly_mulmod(a, b, p, r, f)

    def add(a, b):
        out, k = 0, 1
        for _ in range(r):
            out += ((a % p + b % p) % p) * k
            a //= p
            b //= p
            k *= p
        return out

    def power(a, e):
        out = 1
        for _ in range(e):
            out = mul(out, a)
        return out

    powd = [power(x, d) for x in range(q)]
    c = mul(d % p, lam)
    mtab = {}

    def mulc(a, b):
        key = (a, b)
        if key not in mtab:
            mtab[key] = mul(a, b)
        return mtab[key]

    count = 0
    for xs in itertools.product(range(q), repeat=d):
        s = 0
        m = c
        for x in xs:
            s = add(s, powd[x])
            m = mulc(m, x)
        if s == m:
            count += 1
    return count


def main():
    rows = []
    for d, p, r, lams in INSTANCES:
        field = build_field(p, r)
        if lams == "all":
            lams = list(range(field.q))
        lams = [field.generator if x == "g" else x for x in lams]
        for lam in lams:
            n = naive_count(field, d, lam)
            rows.append({"d": d, "p": p, "r": r, "lambda": lam, "N_affine": n,
                         "projective": (n - 1) // (field.q - 1)})
            print(rows[-1])
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "golden_counts.json"
    out.write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    main()
