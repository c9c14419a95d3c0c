#!/usr/bin/env python3
"""Search glue codes for three Niemeier lattices that are invariant under a
given permutation of the simple roots, and write them as JSON.

Root basis numbering is 1-based, components listed in root-type order.
Glue vectors are written in root-basis coordinates as rational strings.

usage: gen_niemeier_glue.py OUTDIR [--seed N]
"""
import argparse
import itertools
import json
import os
import random
from fractions import Fraction as F


def cycles_to_perm(n, cycles):
    p = list(range(n + 1))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return p


# ---------------------------------------------------------------- A1^24

SIGMA_VI = [(3, 4), (5, 6, 7, 8), tuple(range(9, 17)), tuple(range(17, 25))]


def wt(x):
    return bin(x).count("1")


def span(vecs):
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def all_words(basis):
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return words


def apply_bits(perm, x, n):
    y = 0
    for i in range(1, n + 1):
        if x >> (i - 1) & 1:
            y |= 1 << (perm[i] - 1)
    return y


def bits(s):
    x = 0
    for i in s:
        x |= 1 << (i - 1)
    return x


def golay_search(rng):
    perm = cycles_to_perm(24, SIGMA_VI)
    req = [bits(range(1, 9)), bits(range(5, 17)),
           bits(list(range(5, 9)) + list(range(17, 25)))]

    def orbit(x):
        out, y = [], x
        for _ in range(8):
            out.append(y)
            y = apply_bits(perm, y, 24)
        return out

    for attempt in range(20000):
        basis = span(req)
        ok = True
        while len(basis) < 12 and ok:
            found = False
            for _ in range(400):
                x = rng.getrandbits(24)
                if wt(x) % 4:
                    continue
                if any(wt(x & b) % 2 for b in basis):
                    continue
                orb = orbit(x)
                if any(wt(x & y) % 2 for y in orb):
                    continue
                nb = span(basis + orb)
                if len(nb) == len(basis):
                    continue
                if min(wt(w) for w in all_words(nb) if w) < 8:
                    continue
                basis = nb
                found = True
                break
            ok = found
        if ok and len(basis) == 12:
            return basis
    raise RuntimeError("no Golay code found")


def a1_glue(basis):
    rows = []
    for b in basis:
        rows.append(["1/2" if b >> i & 1 else "0" for i in range(24)])
    return rows


# ---------------------------------------------------------------- A2^12

def ternary_map(x):
    y = [0] * 12
    y[0] = x[0]
    y[1] = (-x[1]) % 3
    y[3] = x[2]
    y[2] = (-x[3]) % 3
    for k in range(4, 12):
        y[4 + (k - 4 + 1) % 8] = x[k]
    return y


def rank3(vecs):
    rows = [list(v) for v in vecs]
    r = 0
    for c in range(12):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % 3), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 if rows[r][c] % 3 == 1 else 2
        rows[r] = [(v * inv) % 3 for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % 3:
                f = rows[i][c]
                rows[i] = [(a - f * b) % 3 for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def tspan(basis):
    words = [tuple([0] * 12)]
    for b in basis:
        new = []
        for w in words:
            for k in (1, 2):
                new.append(tuple((a + k * c) % 3 for a, c in zip(w, b)))
        words += new
    return words


def ternary_search(rng):
    req = [2, 0, 0, 0] + [2] * 8

    def orbit(x):
        out, y = [], list(x)
        for _ in range(8):
            out.append(y)
            y = ternary_map(y)
        return out

    for attempt in range(200000):
        x = [rng.randrange(3) for _ in range(12)]
        gens = orbit(req) + orbit(x)
        if any(sum(a * b for a, b in zip(u, v)) % 3 for u in gens for v in gens):
            continue
        basis = rank3(gens)
        if len(basis) != 6:
            continue
        if min(sum(1 for a in w if a) for w in tspan(basis) if any(w)) < 6:
            continue
        return basis
    raise RuntimeError("no ternary Golay code found")


def a2_glue(basis):
    rows = []
    for b in basis:
        row = []
        for x in b:
            # class x is represented by x * omega_1 = x * (2/3, 1/3)
            row += [str(F(2 * x, 3)), str(F(x, 3))]
        rows.append(row)
    return rows


# ---------------------------------------------------------------- A5^4 D4

A5_INV = [[F(min(i, j) * (6 - max(i, j)), 6) for j in range(1, 6)] for i in range(1, 6)]
D4_END = {1: 0, 2: 2, 3: 3}  # class label -> node index in component (0-based)
D4_INV = [[F(1), F(1), F(1, 2), F(1, 2)],
          [F(1), F(2), F(1), F(1)],
          [F(1, 2), F(1), F(1), F(1, 2)],
          [F(1, 2), F(1), F(1, 2), F(1)]]


def a5_q(i):
    i %= 6
    return F(i * (6 - i), 6)


def d4_add(a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    if a == b:
        return 0
    return 6 - a - b


def elt_add(x, y):
    return tuple((a + b) % 6 for a, b in zip(x[:4], y[:4])) + (d4_add(x[4], y[4]),)


def elt_q(x):
    return sum(a5_q(a) for a in x[:4]) + (1 if x[4] else 0)


def elt_b(x, y):
    s = sum(F(a * b * 5, 6) for a, b in zip(x[:4], y[:4]))
    if x[4] and y[4] and x[4] != y[4]:
        s += F(1, 2)
    return s % 1


def sigma2(x):
    d = {0: 0, 1: 1, 2: 3, 3: 2}[x[4]]
    return ((-x[3]) % 6, x[0], x[1], x[2], d)


def closure(gens):
    zero = (0, 0, 0, 0, 0)
    H = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                s = elt_add(h, g)
                if s not in H:
                    H.add(s)
                    new.append(s)
        frontier = new
    return H


def a5d4_search(rng):
    allx = [t + (d,) for t in itertools.product(range(6), repeat=4) for d in range(4)]
    start = (3, 3, 3, 3, 0)
    for attempt in range(20000):
        gens = [start]
        H = closure(gens)
        while len(H) < 72:
            cand = [x for x in allx if x not in H and elt_q(x) % 2 == 0
                    and all(elt_b(x, h) == 0 for h in gens)]
            rng.shuffle(cand)
            ok = False
            for x in cand[:200]:
                orb = [x]
                for _ in range(7):
                    orb.append(sigma2(orb[-1]))
                if any(elt_b(u, v) for u in orb for v in orb):
                    continue
                ng = gens + orb
                NH = closure(ng)
                if any(elt_q(h) < 4 for h in NH if h != (0, 0, 0, 0, 0)):
                    continue
                gens, H, ok = ng, NH, True
                break
            if not ok:
                break
        if len(H) == 72:
            return gens
    raise RuntimeError("no A5^4 D4 glue found")


def a5d4_glue(gens):
    rows = []
    for g in gens:
        row = []
        for a in g[:4]:
            row += [str(a * v) for v in A5_INV[0]]
        if g[4]:
            row += [str(v) for v in D4_INV[D4_END[g[4]]]]
        else:
            row += ["0"] * 4
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.outdir, exist_ok=True)

    out = {
        "A1_24.json": {"root_type": "A1^24", "glue": a1_glue(golay_search(rng))},
        "A2_12.json": {"root_type": "A2^12", "glue": a2_glue(ternary_search(rng))},
        "A5_4_D4.json": {"root_type": "A5^4+D4", "glue": a5d4_glue(a5d4_search(rng))},
    }
    for name, obj in out.items():
        rows = ",\n".join("  " + json.dumps(r) for r in obj["glue"])
        with open(os.path.join(args.outdir, name), "w") as f:
            f.write('{\n "root_type": %s,\n "glue": [\n%s\n ]\n}\n'
                    % (json.dumps(obj["root_type"]), rows))


if __name__ == "__main__":
    main()
