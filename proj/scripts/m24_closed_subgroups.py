"""Closed subgroups of M24 acting on the A1^24 Niemeier lattice.

A subgroup is closed when it is the full stabilizer in M24 of its own orbit
partition on the 24 roots. The search starts from orbit partitions of random
small subgroups, closes them, and coarsens by merging pairs of orbits.
Partitions with 5..7 orbits are written out, one representative per class of
an octad-intersection invariant.

usage: m24_closed_subgroups.py GLUE_JSON OUT_JSON [seed] [seconds]
"""
import itertools
import json
import random
import sys
import time
from fractions import Fraction

from sympy.combinatorics import Permutation, PermutationGroup

INF = 23
QR = {(i * i) % 23 for i in range(1, 23)}


def inv23(x):
    return pow(x, 21, 23)


def perm(f):
    return Permutation([f(x) for x in range(24)])


def conway_delta(x):
    if x in (INF, 0):
        return x
    return (pow(x, 3, 23) * inv23(9)) % 23 if x in QR else (9 * pow(x, 3, 23)) % 23


# M24 on the projective line over F_23: L2(23) plus Conway's delta.
STD_GENS = [perm(lambda x: INF if x == INF else (x + 1) % 23),
            perm(lambda x: INF if x == INF else (2 * x) % 23),
            perm(lambda x: 0 if x == INF else (INF if x == 0 else (-inv23(x)) % 23)),
            perm(conway_delta)]


def gf2_span(rows):
    basis = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    words = [0]
    for v in basis.values():
        words += [w ^ v for w in words]
    return list(basis.values()), words


def bits(w):
    return [i for i in range(24) if w >> i & 1]


def weight8(words):
    return [w for w in words if bin(w).count("1") == 8]


def code_isomorphism(std_octads, our_octads):
    """A bijection of points carrying the standard octads onto ours."""
    by_point = {p: [o for o in std_octads if o >> p & 1] for p in range(24)}
    five = {}
    for o in our_octads:
        for c in itertools.combinations(bits(o), 5):
            five[c] = o

    def consistent(f, p):
        for o in by_point[p]:
            pts = [x for x in bits(o) if x in f]
            if len(pts) < 5:
                continue
            t = five.get(tuple(sorted(f[x] for x in pts[:5])))
            if t is None or any(not (t >> f[x] & 1) for x in pts):
                return False
        return True

    # M24 is 5-transitive, so the first five images are free.
    f = {i: i for i in range(5)}

    def rec(p):
        if p == 24:
            return dict(f)
        used = set(f.values())
        for q in range(24):
            if q in used:
                continue
            f[p] = q
            if consistent(f, p):
                r = rec(p + 1)
                if r:
                    return r
            del f[p]
        return None

    return rec(5)


def m24_on_code(glue_path):
    std_rows = [sum(1 << ((x + s) % 23) for x in QR | {0}) for s in range(23)] + [(1 << 24) - 1]
    std_basis, std_words = gf2_span(std_rows)
    glue = json.load(open(glue_path))["glue"]
    rows = [sum(1 << i for i, e in enumerate(r) if Fraction(e).denominator == 2) for r in glue]
    our_basis, our_words = gf2_span(rows)
    if len(std_basis) != 12 or len(our_basis) != 12:
        raise SystemExit("not a Golay code")
    pi = code_isomorphism(weight8(std_words), weight8(our_words))
    gens = []
    for g in STD_GENS:
        a = g.array_form
        img = [0] * 24
        for x in range(24):
            img[pi[x]] = pi[a[x]]
        gens.append(Permutation(img))
    words = set(our_words)
    for g in gens:
        a = g.array_form
        assert all(sum(1 << a[i] for i in bits(w)) in words for w in our_basis)
    m = PermutationGroup(gens)
    assert m.order() == 244823040
    return m, weight8(our_words)


def orbits_of(gs):
    par = list(range(24))

    def find(x):
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    for g in gs:
        a = g.array_form
        for x in range(24):
            r, s = find(x), find(a[x])
            if r != s:
                par[r] = s
    d = {}
    for x in range(24):
        d.setdefault(find(x), []).append(x)
    return sorted((tuple(sorted(v)) for v in d.values()), key=lambda o: (len(o), o))


class Search:
    def __init__(self, m24, octads):
        self.m = m24
        self.octads = octads
        self.seen = {}
        self.queue = []

    def stabilizer(self, parts):
        label = [0] * 24
        for i, p in enumerate(parts):
            for x in p:
                label[x] = i
        pts = [x for p in sorted(parts, key=len) for x in sorted(p)]
        base, sgs = self.m.schreier_sims_incremental(base=pts[:7])
        tests = [lambda cw, l=l: all(label[cw[i](base[i])] == label[base[i]] for i in range(l + 1))
                 for l in range(len(base))]
        prop = lambda g: all(label[g.array_form[x]] == label[x] for x in range(24))
        return self.m.subgroup_search(prop, base=base, strong_gens=sgs, tests=tests)

    def key(self, order, parts):
        masks = [sum(1 << x for x in p) for p in parts]
        single = sorted((len(p), tuple(sum(1 for o in self.octads if bin(o & mk).count("1") == k)
                                       for k in range(9))) for p, mk in zip(parts, masks))
        pairs = []
        for a, b in itertools.combinations(range(len(parts)), 2):
            h = {}
            for o in self.octads:
                k = (bin(o & masks[a]).count("1"), bin(o & masks[b]).count("1"))
                h[k] = h.get(k, 0) + 1
            pairs.append(tuple(sorted(h.items())))
        return (order, tuple(single), tuple(sorted(pairs)))

    def close(self, parts):
        h = self.stabilizer(parts)
        p = orbits_of(h.generators)
        if len(p) < 5:
            return
        k = self.key(h.order(), p)
        if k not in self.seen:
            self.seen[k] = (h, p)
            self.queue.append(p)

    def drain(self):
        while self.queue:
            q = self.queue.pop()
            if len(q) <= 5:
                continue
            for a, b in itertools.combinations(range(len(q)), 2):
                self.close([p for i, p in enumerate(q) if i not in (a, b)] + [q[a] + q[b]])


def small_power(g):
    o = g.order()
    divs = [d for d in range(1, o + 1) if o % d == 0 and 1 < o // d <= 12]
    return g ** random.choice(divs) if divs else g


def main():
    glue_path, out_path = sys.argv[1], sys.argv[2]
    random.seed(int(sys.argv[3]) if len(sys.argv) > 3 else 1)
    budget = float(sys.argv[4]) if len(sys.argv) > 4 else 400
    m24, octads = m24_on_code(glue_path)
    s = Search(m24, octads)
    starts = [m24]
    g = m24
    for k in range(4):
        g = g.stabilizer(k)
        starts.append(g)
    o = bits(octads[0])
    starts.append(s.stabilizer([o, [x for x in range(24) if x not in o]]))
    tried = set()
    t0 = time.time()
    while time.time() - t0 < budget:
        grp = random.choice(starts + [h for h, _ in list(s.seen.values())])
        x = small_power(grp.random())
        y = small_power(grp.random()) if random.random() < 0.5 else x ^ grp.random()
        gs = [x, y] + ([small_power(grp.random())] if random.random() < 0.3 else [])
        p = tuple(orbits_of(gs))
        if not 5 <= len(p) <= 9 or p in tried:
            continue
        tried.add(p)
        s.close(list(p))
        s.drain()
    out = []
    for h, p in s.seen.values():
        if len(p) > 7:
            continue
        gens = [[list(c) for c in Permutation(g.array_form).cyclic_form] for g in h.generators]
        out.append({"order": int(h.order()),
                    "orbits": [[x + 1 for x in q] for q in p],
                    "generators": [[[x + 1 for x in c] for c in g] for g in gens]})
    out.sort(key=lambda e: (e["order"], len(e["orbits"]), e["orbits"]))
    json.dump({"niemeier": "A1^24", "subgroups": out}, open(out_path, "w"), indent=1)
    print(len(out), "closed subgroups with 5..7 orbits", file=sys.stderr)


if __name__ == "__main__":
    main()
