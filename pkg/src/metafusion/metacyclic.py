"""Metacyclic 2-groups from presentation parameters.

``MetacyclicParams(m, n, r, s)`` stands for

    < x, y | x^(2^m) = 1, y^(2^n) = x^s, y x y^-1 = x^r >

which has order ``2^(m+n)`` whenever ``r^(2^n) = 1`` and ``s(r-1) = 0``
modulo ``2^m``. Element ``x^i y^j`` gets index ``j * 2^m + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ContractViolation, InputError, NotMetacyclicError, OrderCapExceeded
from .groups import (
    SWEEP_CAP,
    GroupTable,
    conjugacy_classes,
    derived_subgroup,
    invariant_factors,
    is_maximal_class,
    nilpotency_class,
    quotient,
)

FAMILY_TAGS = ("cyclic", "homocyclic", "abelian-other", "dihedral", "semidihedral",
               "quaternion", "modular", "other-metacyclic")
MAXIMAL_CLASS_TAGS = frozenset({"dihedral", "semidihedral", "quaternion"})
BUILD_CAP_EXPONENT = 9


@dataclass(frozen=True, order=True)
class MetacyclicParams:
    m: int
    n: int
    r: int
    s: int

    @property
    def order(self) -> int:
        return 2 ** (self.m + self.n)

    def __str__(self):
        return f"{self.m},{self.n},{self.r},{self.s}"

    @classmethod
    def parse(cls, text: str) -> "MetacyclicParams":
        try:
            values = [int(v) for v in text.split(",")]
        except ValueError:
            raise InputError(f"parameters must be four integers 'm,n,r,s', got {text!r}") from None
        if len(values) != 4:
            raise InputError(f"parameters must be four integers 'm,n,r,s', got {text!r}")
        return cls(*values)


@dataclass(frozen=True)
class Family:
    tag: str
    order: int
    name: str = ""

    @property
    def maximal_class(self) -> bool:
        return self.tag in MAXIMAL_CLASS_TAGS


def validate(p: MetacyclicParams) -> str | None:
    """``None`` if the parameters define a group of order ``2^(m+n)``,
    otherwise a description of the first violated condition."""
    if p.m < 1 or p.n < 0:
        return f"need m >= 1 and n >= 0, got m={p.m}, n={p.n}"
    M = 2**p.m
    if not (0 <= p.r < M and 0 <= p.s < M):
        return f"r and s must lie in [0, {M})"
    if p.r % 2 == 0:
        return f"r = {p.r} is not odd"
    if pow(p.r, 2**p.n, M) != 1:
        return f"r^(2^n) = {pow(p.r, 2**p.n, M)} is not 1 mod {M}"
    if p.s * (p.r - 1) % M:
        return f"s(r-1) = {p.s * (p.r - 1)} is not 0 mod {M}"
    return None


def check_params(p: MetacyclicParams) -> MetacyclicParams:
    problem = validate(p)
    if problem:
        raise InputError(f"invalid metacyclic parameters {p}: {problem}")
    return p


def _label(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return " ".join(parts) or "1"


@lru_cache(maxsize=256)
def build(p: MetacyclicParams) -> GroupTable:
    check_params(p)
    if p.m + p.n > BUILD_CAP_EXPONENT:
        raise OrderCapExceeded(f"order 2^{p.m + p.n} exceeds the table cap 2^{BUILD_CAP_EXPONENT}")
    M, N = 2**p.m, 2**p.n
    idx = np.arange(M * N)
    i, j = idx % M, idx // M
    rpow = np.array([pow(p.r, t, M) for t in range(N)], dtype=np.int64)
    i1, j1 = i[:, None], j[:, None]
    i2, j2 = i[None, :], j[None, :]
    ii = i1 + i2 * rpow[j1]
    jj = j1 + j2
    wrap = jj >= N
    ii = (ii + np.where(wrap, p.s, 0)) % M
    jj = np.where(wrap, jj - N, jj)
    labels = [_label(a, b) for a, b in zip(i.tolist(), j.tolist())]
    return GroupTable(jj * M + ii, labels=labels, source="metacyclic-params", params=p)


def generators(p: MetacyclicParams) -> tuple[int, int]:
    """Indices of ``x`` and ``y`` in ``build(p)``."""
    if p.n == 0:
        return 1, p.s  # y = x^s
    return 1, 2**p.m


def standard_family(tag: str, order: int) -> MetacyclicParams:
    k = order.bit_length() - 1
    if order < 2 or 2**k != order:
        raise InputError(f"order {order} is not a power of 2 greater than 1")
    m = k - 1
    if tag == "cyclic":
        return MetacyclicParams(k, 0, 1, 0)
    if tag == "dihedral" and order >= 8:
        return MetacyclicParams(m, 1, 2**m - 1, 0)
    if tag == "quaternion" and order >= 8:
        return MetacyclicParams(m, 1, 2**m - 1, 2 ** (m - 1))
    if tag == "semidihedral" and order >= 16:
        return MetacyclicParams(m, 1, 2 ** (m - 1) - 1, 0)
    if tag == "modular" and order >= 16:
        return MetacyclicParams(m, 1, 2 ** (m - 1) + 1, 0)
    if tag == "homocyclic" and k % 2 == 0:
        return MetacyclicParams(k // 2, k // 2, 1, 0)
    raise InputError(f"no standard {tag} group of order {order}")


def find_metacyclic_pair(G: GroupTable) -> tuple[MetacyclicParams, int, int]:
    """Recognize a metacyclic 2-group.

    Returns parameters and elements ``g1, g2`` satisfying them, with ``<g1>``
    normal of the largest possible order and ``G/<g1>`` generated by ``g2``.
    """
    if not G.is_2_group:
        raise ContractViolation("recognition is implemented for 2-groups only")
    if G.order == 1:
        raise NotMetacyclicError("the trivial group has no metacyclic parameters here")
    orders = G.element_orders
    idx = np.arange(G.order)
    for g1 in sorted(range(1, G.order), key=lambda g: (-int(orders[g]), g)):
        o1 = int(orders[g1])
        cyc = G.power(g1, np.arange(o1))
        in_c = np.zeros(G.order, dtype=bool)
        in_c[cyc] = True
        if not in_c[G.conjugate(idx, g1)].all():
            continue
        t = G.order // o1
        if t == 1:
            g2 = 0
        else:
            gens_quot = np.flatnonzero(~in_c[G.power(idx, t // 2)])
            if not len(gens_quot):
                continue
            g2 = int(gens_quot[0])
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[cyc] = np.arange(o1)
        r = int(pos[G.conjugate(g2, g1)])
        s = int(pos[G.power(g2, t)])
        m, n = o1.bit_length() - 1, t.bit_length() - 1
        if n == 0:
            g2 = int(cyc[s])
        return check_params(MetacyclicParams(m, n, r, s)), g1, g2
    raise NotMetacyclicError("no cyclic normal subgroup with cyclic quotient")


def is_metacyclic(G: GroupTable) -> bool:
    try:
        find_metacyclic_pair(G)
    except NotMetacyclicError:
        return False
    return True


def _v2(a: int, cap: int) -> int:
    if a == 0:
        return cap
    return min((a & -a).bit_length() - 1, cap)


def canonical_params(p: MetacyclicParams) -> MetacyclicParams:
    """A representative of ``p`` under explicit generator changes.

    ``x -> x^v`` and ``y -> y^u`` (``u, v`` odd) and ``y -> x^t y`` turn the
    presentation into one with ``r`` replaced by ``r^u`` and ``s`` replaced by
    ``s*u/v + t*(1 + r + ... + r^(2^n - 1))``. Equal results therefore mean
    isomorphic groups; the converse does not hold (different ``m`` can give
    the same group).
    """
    check_params(p)
    M, N = 2**p.m, 2**p.n
    r = min(pow(p.r, u, M) for u in range(1, max(N, 2), 2))
    S = sum(pow(p.r, j, M) for j in range(N)) % M
    e = _v2(S, p.m)
    v = _v2(p.s, p.m)
    s = 0 if v >= e else 2**v
    q = MetacyclicParams(p.m, p.n, r, s)
    check_params(q)
    return q


def all_valid_params(max_order: int):
    """Every valid parameter tuple with ``2 <= 2^(m+n) <= max_order``."""
    top = max_order.bit_length() - 1
    for total in range(1, top + 1):
        for m in range(total, 0, -1):
            n = total - m
            M = 2**m
            for r, s in product(range(1, M, 2), range(M)):
                p = MetacyclicParams(m, n, r, s)
                if validate(p) is None:
                    yield p


def fingerprint(G: GroupTable) -> tuple:
    """Isomorphism invariant used to bucket groups before explicit testing."""
    orders = G.element_orders
    ab = quotient(G, derived_subgroup(G))
    return (G.order, tuple(invariant_factors(ab)), G.exponent,
            int(np.count_nonzero(orders == 2)), len(conjugacy_classes(G)),
            nilpotency_class(G))


def _count_involutions(G: GroupTable) -> int:
    return int(np.count_nonzero(G.element_orders == 2))


def group_name(G: GroupTable, tag: str) -> str:
    order = G.order
    if tag == "cyclic":
        return f"C{order}"
    if tag == "homocyclic":
        return f"C{invariant_factors(G)[0]}^2"
    if tag == "abelian-other":
        return "x".join(f"C{f}" for f in sorted(invariant_factors(G)))
    prefix = {"dihedral": "D", "semidihedral": "SD", "quaternion": "Q", "modular": "M"}.get(tag)
    if prefix:
        return f"{prefix}{order}"
    params, _, _ = find_metacyclic_pair(G)
    return f"MC({params})"


def classify(G: GroupTable) -> Family:
    if not G.is_2_group:
        raise ContractViolation("classify expects a 2-group")
    if G.order > 2**BUILD_CAP_EXPONENT:
        raise OrderCapExceeded("classify is limited to order 2^9")
    if G.order == 1:
        return Family("cyclic", 1, "C1")
    find_metacyclic_pair(G)  # raises NotMetacyclicError
    order = G.order
    if G.is_abelian:
        f = invariant_factors(G)
        if len(f) <= 1:
            tag = "cyclic"
        elif f[0] == f[1]:
            tag = "homocyclic"
        else:
            tag = "abelian-other"
    elif is_maximal_class(G):
        k = order.bit_length() - 1
        inv = _count_involutions(G)
        by_count = {1: "quaternion", 2 ** (k - 1) + 1: "dihedral"}
        if order >= 16:
            by_count[2 ** (k - 2) + 1] = "semidihedral"
        if inv not in by_count:
            raise ContractViolation(f"maximal class group with {inv} involutions")
        tag = by_count[inv]
    elif (G.element_orders == order // 2).any():
        tag = "modular"
    else:
        tag = "other-metacyclic"
    return Family(tag, order, group_name(G, tag))


def _representative_key(p: MetacyclicParams):
    return (-p.m, p.n, p.r, p.s)


@lru_cache(maxsize=8)
def _enumerate(max_order: int) -> tuple[tuple[MetacyclicParams, Family], ...]:
    canon = sorted({canonical_params(p) for p in all_valid_params(max_order)},
                   key=_representative_key)
    buckets: dict[tuple, list[MetacyclicParams]] = {}
    for p in canon:
        G = build(p)
        bucket = buckets.setdefault(fingerprint(G), [])
        if any(_isomorphic_params(q, p) for q in bucket):
            continue
        bucket.append(p)
    out = [(p, classify(build(p))) for bucket in buckets.values() for p in bucket]
    out.sort(key=lambda item: (item[0].order, item[1].tag, item[0]))
    return tuple(out)


def _isomorphic_params(p: MetacyclicParams, q: MetacyclicParams) -> bool:
    from .morphisms import find_isomorphism
    return find_isomorphism(build(p), build(q), generators(p), (p.m, p.n, p.r, p.s)) is not None


def enumerate_all(max_order: int) -> list[tuple[MetacyclicParams, Family]]:
    """One parameter tuple per isomorphism type of metacyclic 2-group of
    order ``2 .. max_order``, sorted by (order, family tag, params)."""
    if max_order > SWEEP_CAP:
        raise OrderCapExceeded(f"enumeration is limited to order {SWEEP_CAP}")
    if max_order < 1:
        raise InputError("max_order must be positive")
    return list(_enumerate(1 << (max_order.bit_length() - 1)))


def isomorphism_type(p: MetacyclicParams) -> MetacyclicParams:
    """The representative that :func:`enumerate_all` uses for ``p``'s type."""
    check_params(p)
    for q, _ in _enumerate_order(p.order):
        if _isomorphic_params(p, q):
            return q
    raise AssertionError(f"{p} missing from the enumeration")


def _enumerate_order(order: int):
    return [item for item in enumerate_all(order) if item[0].order == order]
