"""Finite groups as explicit multiplication tables.

Elements are the integers ``0 .. order-1`` with the identity fixed at 0. All
tables are precomputed numpy arrays and are made read-only after construction,
so a :class:`GroupTable` can be shared freely between workers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InputError, OrderCapExceeded

TABLE_CAP = 2**9
SWEEP_CAP = 2**8
FULL_ASSOCIATIVITY_LIMIT = 2**6
ASSOCIATIVITY_SAMPLES = 100_000

SOURCES = ("metacyclic-params", "permutation-generators", "quotient", "subgroup")
JSON_FORMAT = "metafusion.group-table"
JSON_VERSION = 1


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class GroupTable:
    """An explicit finite group.

    ``mul[a, b]`` is the index of the product ``a*b`` and ``inv[a]`` the index
    of the inverse. The constructor checks the group axioms: identity and
    inverses always, associativity exhaustively up to order 64 and on a
    random sample of triples above that.
    """

    def __init__(self, mul, inv=None, labels: Sequence[str] | None = None,
                 source: str = "subgroup", params=None, check: bool = True):
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise InputError("multiplication table must be a non-empty square array")
        order = mul.shape[0]
        if order > TABLE_CAP:
            raise OrderCapExceeded(f"table order {order} exceeds cap {TABLE_CAP}")
        if source not in SOURCES:
            raise InputError(f"unknown source tag {source!r}")
        if mul.min() < 0 or mul.max() >= order:
            raise InputError("multiplication table entries out of range")
        self.order = order
        self.mul = mul
        if inv is None:
            inv = np.argmin(mul, axis=1)
        self.inv = np.array(inv, dtype=np.int64)
        self.labels = tuple(labels) if labels is not None else tuple(str(g) for g in range(order))
        self.source = source
        self.params = params
        if check:
            self._check_axioms()
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def _check_axioms(self):
        n = self.order
        idx = np.arange(n)
        if not (np.array_equal(self.mul[0], idx) and np.array_equal(self.mul[:, 0], idx)):
            raise ContractViolation("index 0 is not a two-sided identity")
        if self.inv.shape != (n,) or not np.all(self.mul[idx, self.inv] == 0) \
                or not np.all(self.mul[self.inv, idx] == 0):
            raise ContractViolation("inverse table is not a two-sided inverse")
        if len(self.labels) != n:
            raise InputError("one label per element required")
        if self.source == "metacyclic-params" and not is_power_of_two(n):
            raise ContractViolation("metacyclic-params tables must have 2-power order")
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            ab = self.mul[:, :, None]
            left = self.mul[ab, idx[None, None, :]]
            right = self.mul[idx[:, None, None], self.mul[None, :, :]]
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(0x2B10C)
            a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
            ok = np.array_equal(self.mul[self.mul[a, b], c], self.mul[a, self.mul[b, c]])
        if not ok:
            raise ContractViolation("multiplication table is not associative")

    def __repr__(self):
        return f"GroupTable(order={self.order}, source={self.source!r})"

    def __len__(self):
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for fast scalar lookups."""
        return self.mul.tolist()

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while True:
            orders[(cur == 0) & (orders == 0)] = k
            if orders.all():
                break
            cur = self.mul[cur, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders.tolist())

    @cached_property
    def power_table(self) -> np.ndarray:
        """``power_table[g, e] == g**e`` for ``0 <= e < exponent``."""
        n, e = self.order, self.exponent
        idx = np.arange(n)
        tab = np.zeros((n, e), dtype=np.int64)
        for j in range(1, e):
            tab[:, j] = self.mul[tab[:, j - 1], idx]
        tab.setflags(write=False)
        return tab

    def power(self, g, e: int):
        """``g**e`` for a scalar or an array of elements (any integer ``e``)."""
        return self.power_table[g, e % self.exponent]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def is_2_group(self) -> bool:
        return is_power_of_two(self.order)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,), ())

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)), tuple(_small_generating_set(self, range(self.order))))

    def commutator(self, a, b):
        m, i = self.mul, self.inv
        return m[m[m[a, b], i[a]], i[b]]

    def conjugate(self, g, h):
        """``g h g^-1``."""
        return self.mul[self.mul[g, h], self.inv[g]]

    # --- serialization -------------------------------------------------

    def to_json(self) -> dict:
        p = self.params
        return {
            "format": JSON_FORMAT,
            "version": JSON_VERSION,
            "order": self.order,
            "source": self.source,
            "params": None if p is None else [p.m, p.n, p.r, p.s],
            "labels": list(self.labels),
            "mul": self.mul.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GroupTable":
        if doc.get("format") != JSON_FORMAT or doc.get("version") != JSON_VERSION:
            raise InputError("not a version-1 metafusion group-table document")
        params = None
        if doc.get("params") is not None:
            from .metacyclic import MetacyclicParams
            params = MetacyclicParams(*doc["params"])
        table = cls(doc["mul"], labels=doc["labels"], source=doc["source"], params=params)
        if table.order != doc["order"]:
            raise InputError("order field disagrees with table size")
        return table

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subset of a :class:`GroupTable` closed under the group operations.

    Equality and hashing use the member set only (and parent identity).
    """

    parent: GroupTable = field(repr=False)
    members: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.member_set

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.members, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        m.setflags(write=False)
        return m

    def issubset(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set

    def check(self):
        """Raise unless this is a genuine subgroup generated by its generators."""
        G = self.parent
        a = self.array
        if 0 not in self.member_set:
            raise ContractViolation("subgroup misses the identity")
        if not self.mask[G.mul[np.ix_(a, a)]].all() or not self.mask[G.inv[a]].all():
            raise ContractViolation("subgroup is not closed")
        if G.order % self.order:
            raise ContractViolation("subgroup order does not divide the group order")
        if _closure(G, self.generators) != self.members:
            raise ContractViolation("generators do not generate the member set")


@dataclass(frozen=True)
class ConjugacyPartition:
    classes: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


# --- closures ---------------------------------------------------------------


def _closure(G: GroupTable, gens: Iterable[int], seed: Iterable[int] = ()) -> tuple[int, ...]:
    gens = list(dict.fromkeys(gens))
    seen = {0, *seed}
    queue = list(seen)
    rows = G.rows
    for e in queue:
        row = rows[e]
        for g in gens:
            f = row[g]
            if f not in seen:
                seen.add(f)
                queue.append(f)
    return tuple(sorted(seen))


def _closure_of_set(G: GroupTable, elements) -> tuple[int, ...]:
    """Subgroup generated by a possibly large element set (product doubling)."""
    S = np.unique(np.concatenate([[0], np.asarray(list(elements), dtype=np.int64)]))
    while True:
        T = np.unique(G.mul[np.ix_(S, S)])
        if len(T) == len(S):
            return tuple(T.tolist())
        S = T


def _small_generating_set(G: GroupTable, members: Iterable[int]) -> list[int]:
    members = sorted(members)
    gens: list[int] = []
    current = {0}
    # largest element orders first keeps generating sets short
    for g in sorted(members, key=lambda h: (-int(G.element_orders[h]), h)):
        if g not in current:
            gens.append(g)
            current = set(_closure(G, gens))
            if len(current) == len(members):
                break
    return gens


def _check_indices(G: GroupTable, elems: Iterable[int]) -> list[int]:
    out = []
    for g in elems:
        if isinstance(g, (bool, np.bool_)) or not isinstance(g, (int, np.integer)):
            raise InputError(f"element index {g!r} is not an integer")
        if not 0 <= int(g) < G.order:
            raise InputError(f"element index {g} out of range for order {G.order}")
        out.append(int(g))
    return out


def generate_closure(parent: GroupTable, gens: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``."""
    gens = _check_indices(parent, gens)
    return Subgroup(parent, _closure(parent, gens), tuple(gens))


def subgroup_from_members(parent: GroupTable, members: Iterable[int]) -> Subgroup:
    members = tuple(sorted(set(_check_indices(parent, members))))
    H = Subgroup(parent, members, tuple(_small_generating_set(parent, members)))
    if _closure(parent, H.generators) != members:
        raise ContractViolation("member set is not a subgroup")
    return H


# --- normalizers, centralizers, characteristic subgroups --------------------


def normalizer(parent: GroupTable, Q: Subgroup) -> Subgroup:
    conj = parent.conjugate(np.arange(parent.order)[:, None], Q.array[None, :])
    ok = Q.mask[conj].all(axis=1)
    return subgroup_from_members(parent, np.flatnonzero(ok).tolist())


def centralizer(parent: GroupTable, Q: Subgroup) -> Subgroup:
    idx = np.arange(parent.order)[:, None]
    q = Q.array[None, :]
    ok = (parent.mul[idx, q] == parent.mul[q, idx]).all(axis=1)
    return subgroup_from_members(parent, np.flatnonzero(ok).tolist())


def is_normal(parent: GroupTable, Q: Subgroup) -> bool:
    conj = parent.conjugate(np.arange(parent.order)[:, None], Q.array[None, :])
    return bool(Q.mask[conj].all())


def center(parent: GroupTable) -> Subgroup:
    return centralizer(parent, parent.whole)


def commutator_subgroup(parent: GroupTable, A: Subgroup, B: Subgroup) -> Subgroup:
    comms = parent.commutator(A.array[:, None], B.array[None, :])
    return subgroup_from_members(parent, _closure_of_set(parent, np.unique(comms)))


def derived_subgroup(parent: GroupTable) -> Subgroup:
    return commutator_subgroup(parent, parent.whole, parent.whole)


def frattini(parent: GroupTable, method: str = "squares") -> Subgroup:
    """Frattini subgroup.

    ``method="squares"`` closes all squares and commutators, which is only
    valid for 2-groups; ``method="maximal"`` intersects the maximal subgroups
    and works for any group.
    """
    if method == "squares":
        if not parent.is_2_group:
            raise ContractViolation(
                "squares-and-commutators Frattini shortcut refused for a non-2-group; "
                "use method='maximal'")
        idx = np.arange(parent.order)
        seeds = np.concatenate([parent.mul[idx, idx],
                                np.unique(parent.commutator(idx[:, None], idx[None, :]))])
        return subgroup_from_members(parent, _closure_of_set(parent, seeds))
    if method == "maximal":
        subs = all_subgroups(parent, method="fixpoint")
        proper = [H for H in subs if H.order < parent.order]
        maximal = [H for H in proper
                   if not any(H.order < K.order and H.issubset(K) for K in proper)]
        if not maximal:
            return parent.trivial
        common = frozenset(maximal[0].members)
        for H in maximal[1:]:
            common &= H.member_set
        return subgroup_from_members(parent, common)
    raise InputError(f"unknown Frattini method {method!r}")


def omega(parent: GroupTable) -> Subgroup:
    """Subgroup generated by the elements of order at most 2."""
    if not parent.is_2_group:
        raise ContractViolation("omega is defined here for 2-groups only")
    inv = np.flatnonzero(parent.element_orders <= 2)
    return generate_closure(parent, inv.tolist())


# --- conjugacy and series ----------------------------------------------------


def conjugacy_classes(parent: GroupTable) -> ConjugacyPartition:
    n = parent.order
    seen = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        cls = np.unique(parent.conjugate(idx, g))
        seen[cls] = True
        classes.append(tuple(cls.tolist()))
    return ConjugacyPartition(tuple(classes))


def lower_central_series(parent: GroupTable) -> list[Subgroup]:
    series = [parent.whole]
    while series[-1].order > 1:
        nxt = commutator_subgroup(parent, series[-1], parent.whole)
        if nxt.order == series[-1].order:
            raise ContractViolation("group is not nilpotent")
        series.append(nxt)
    return series


def nilpotency_class(parent: GroupTable) -> int:
    return len(lower_central_series(parent)) - 1


def is_maximal_class(parent: GroupTable) -> bool:
    if not parent.is_2_group or parent.order < 8:
        return False
    return nilpotency_class(parent) == parent.order.bit_length() - 2


# --- quotients ----------------------------------------------------------------


def quotient_map(parent: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """Quotient table and the array sending each element to its coset index."""
    if not is_normal(parent, N):
        raise ContractViolation("quotient by a non-normal subgroup")
    n = parent.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_of[g] < 0:
            coset_of[parent.mul[g, N.array]] = len(reps)
            reps.append(g)
    reps = np.array(reps, dtype=np.int64)
    qmul = coset_of[parent.mul[np.ix_(reps, reps)]]
    labels = [parent.labels[r] + "N" for r in reps.tolist()]
    Q = GroupTable(qmul, labels=labels, source="quotient")
    coset_of.setflags(write=False)
    return Q, coset_of


def quotient(parent: GroupTable, N: Subgroup) -> GroupTable:
    return quotient_map(parent, N)[0]


def subgroup_table(Q: Subgroup) -> GroupTable:
    """``Q`` as a standalone table; element ``i`` is ``Q.members[i]``."""
    G = Q.parent
    a = Q.array
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[a] = np.arange(len(a))
    mul = pos[G.mul[np.ix_(a, a)]]
    return GroupTable(mul, labels=[G.labels[g] for g in Q.members], source="subgroup", check=False)


# --- subgroup lattice -----------------------------------------------------------


def cyclic_subgroups(parent: GroupTable) -> list[Subgroup]:
    found: dict[tuple[int, ...], Subgroup] = {}
    for g in range(parent.order):
        members = _closure(parent, [g])
        if members not in found:
            found[members] = Subgroup(parent, members, (g,) if g else ())
    return sorted(found.values(), key=lambda H: (H.order, H.members))


def all_subgroups(parent: GroupTable, method: str = "auto") -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, members).

    ``"pairs"`` closes every pair of cyclic generators and is complete only
    when every subgroup is 2-generated (true for metacyclic groups);
    ``"fixpoint"`` joins subgroups with cyclic subgroups until nothing new
    appears and is complete for any group. ``"auto"`` picks ``"pairs"`` for
    tables built from metacyclic parameters.
    """
    if parent.order > TABLE_CAP:
        raise OrderCapExceeded(f"order {parent.order} exceeds subgroup-scan cap {TABLE_CAP}")
    if method == "auto":
        method = "pairs" if parent.source == "metacyclic-params" else "fixpoint"
    cyclic = cyclic_subgroups(parent)
    found = {H.members: H for H in cyclic}
    if method == "pairs":
        gens = [H.generators[0] for H in cyclic if H.generators]
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                members = _closure(parent, (g, h))
                if members not in found:
                    found[members] = Subgroup(parent, members, (g, h))
    elif method == "fixpoint":
        cyc_gens = [H.generators[0] for H in cyclic if H.generators]
        frontier = list(found.values())
        while frontier:
            new = []
            for H in frontier:
                for c in cyc_gens:
                    if c in H.member_set:
                        continue
                    gens = H.generators + (c,)
                    members = _closure(parent, gens, H.members)
                    if members not in found:
                        K = Subgroup(parent, members, gens)
                        found[members] = K
                        new.append(K)
            frontier = new
    else:
        raise InputError(f"unknown subgroup enumeration method {method!r}")
    return sorted(found.values(), key=lambda H: (H.order, H.members))


# --- orders and abelian invariants --------------------------------------------


def element_order(parent: GroupTable, g: int) -> int:
    (g,) = _check_indices(parent, [g])
    return int(parent.element_orders[g])


def exponent(parent: GroupTable) -> int:
    return parent.exponent


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors(parent: GroupTable) -> list[int]:
    """Invariant factors of an abelian group, largest first (``[]`` if trivial)."""
    if not parent.is_abelian:
        raise ContractViolation("invariant factors requested for a nonabelian group")
    orders = parent.element_orders
    per_prime = []
    for p in _prime_factors(parent.order):
        # rank_k = number of cyclic p-factors of order >= p^k
        exps = []
        prev = 1
        k = 1
        while True:
            count = int(np.count_nonzero(np.gcd(orders, p**k) == orders))
            step, ratio = 0, count // prev
            while ratio > 1 and ratio % p == 0:
                ratio //= p
                step += 1
            if step == 0:
                break
            exps.append(step)
            prev = count
            k += 1
        # exps[k-1] = #factors with exponent >= k; convert to a partition
        parts = [sum(1 for r in exps if r > i) for i in range(exps[0] if exps else 0)]
        per_prime.append((p, sorted(parts, reverse=True)))
    length = max((len(parts) for _, parts in per_prime), default=0)
    factors = []
    for i in range(length):
        f = 1
        for p, parts in per_prime:
            if i < len(parts):
                f *= p ** parts[i]
        factors.append(f)
    return factors


def is_homocyclic(parent: GroupTable) -> bool:
    if not parent.is_abelian:
        return False
    f = invariant_factors(parent)
    return len(f) == 2 and f[0] == f[1]
