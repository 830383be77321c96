"""Brute-force reference computations, deliberately naive and package-independent.

Everything here works on plain nested lists and Python sets so that a bug in
the numpy code paths cannot hide in a shared helper.
"""

from __future__ import annotations

import itertools
import math


def metacyclic_table(m: int, n: int, r: int, s: int) -> list[list[int]]:
    """Multiplication of normal forms x^i y^j, indexed j*2^m + i."""
    M, N = 2**m, 2**n
    table = [[0] * (M * N) for _ in range(M * N)]
    for j1, i1, j2, i2 in itertools.product(range(N), range(M), range(N), range(M)):
        i = (i1 + i2 * pow(r, j1, M)) % M
        j = j1 + j2
        if j >= N:
            j -= N
            i = (i + s) % M
        table[j1 * M + i1][j2 * M + i2] = j * M + i
    return table


def identity_of(mul) -> int:
    return next(e for e in range(len(mul)) if all(mul[e][g] == g for g in range(len(mul))))


def order_of(mul, g: int) -> int:
    e = identity_of(mul)
    k, h = 1, g
    while h != e:
        h = mul[h][g]
        k += 1
    return k


def inverse_of(mul, g: int) -> int:
    e = identity_of(mul)
    return next(h for h in range(len(mul)) if mul[g][h] == e)


def closure(mul, gens) -> frozenset:
    e = identity_of(mul)
    elems = {e} | set(gens)
    while True:
        new = {mul[a][b] for a in elems for b in elems} - elems
        if not new:
            return frozenset(elems)
        elems |= new


def is_subgroup(mul, members) -> bool:
    members = set(members)
    return bool(members) and all(mul[a][inverse_of(mul, b)] in members for a in members for b in members)


def all_subgroups_fixpoint(mul) -> set[frozenset]:
    """Start from cyclic subgroups, adjoin single elements until nothing new appears."""
    found = {closure(mul, [g]) for g in range(len(mul))}
    frontier = set(found)
    while frontier:
        nxt = set()
        for H in frontier:
            for g in range(len(mul)):
                if g not in H:
                    K = closure(mul, set(H) | {g})
                    if K not in found:
                        nxt.add(K)
        found |= nxt
        frontier = nxt
    return found


def conjugacy_classes(mul) -> list[frozenset]:
    seen, classes = set(), []
    for g in range(len(mul)):
        if g in seen:
            continue
        cls = frozenset(mul[mul[h][g]][inverse_of(mul, h)] for h in range(len(mul)))
        seen |= cls
        classes.append(cls)
    return classes


def commutator_closure(mul) -> frozenset:
    comms = {mul[mul[a][b]][inverse_of(mul, mul[b][a])] for a in range(len(mul)) for b in range(len(mul))}
    return closure(mul, comms)


def frattini_by_maximals(mul) -> frozenset:
    subs = all_subgroups_fixpoint(mul)
    whole = frozenset(range(len(mul)))
    proper = [H for H in subs if H != whole]
    maximal = [H for H in proper if not any(H < K for K in proper)]
    out = whole
    for H in maximal:
        out &= H
    return out


def is_automorphism(mul, perm) -> bool:
    n = len(mul)
    if sorted(perm) != list(range(n)):
        return False
    return all(perm[mul[a][b]] == mul[perm[a]][perm[b]] for a in range(n) for b in range(n))


def extend_pair(mul, g1, g2, a, b, target=None):
    """The map g1->a, g2->b extended along a BFS word tree; None if inconsistent as a map."""
    target = mul if target is None else target
    e = identity_of(mul)
    phi = {e: identity_of(target)}
    queue = [e]
    for u in queue:
        for g, img in ((g1, a), (g2, b)):
            v = mul[u][g]
            w = target[phi[u]][img]
            if v in phi:
                if phi[v] != w:
                    return None
            else:
                phi[v] = w
                queue.append(v)
    if len(phi) != len(mul):
        return None
    return [phi[g] for g in range(len(mul))]


def count_automorphisms(mul, g1, g2) -> int:
    count = 0
    for a, b in itertools.product(range(len(mul)), repeat=2):
        phi = extend_pair(mul, g1, g2, a, b)
        if phi is not None and is_automorphism(mul, phi):
            count += 1
    return count


def isomorphic(mul_g, gens, mul_h) -> bool:
    if len(mul_g) != len(mul_h):
        return False
    g1, g2 = gens
    o1, o2 = order_of(mul_g, g1), order_of(mul_g, g2)
    cand1 = [h for h in range(len(mul_h)) if order_of(mul_h, h) == o1]
    cand2 = [h for h in range(len(mul_h)) if order_of(mul_h, h) == o2]
    for a in cand1:
        for b in cand2:
            phi = extend_pair(mul_g, g1, g2, a, b, mul_h)
            if phi is None or sorted(phi) != list(range(len(mul_h))):
                continue
            if all(phi[mul_g[x][y]] == mul_h[phi[x]][phi[y]]
                   for x in range(len(mul_g)) for y in range(len(mul_g))):
                return True
    return False


def odd_part(n: int) -> int:
    return n // (n & -n)


def perm_compose(p, q):
    return tuple(p[i] for i in q)


def perm_closure(gens, degree):
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = perm_compose(g, e)
                if f not in elems:
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return elems


def perm_order(p) -> int:
    k, q, ident = 1, tuple(p), tuple(range(len(p)))
    while q != ident:
        q = perm_compose(p, q)
        k += 1
    return k


def lcm(*xs):
    return math.lcm(*xs)
