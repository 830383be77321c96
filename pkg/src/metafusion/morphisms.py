"""Homomorphisms defined by the images of a generating pair.

A map ``g1 -> a, g2 -> b`` is extended to every element through a fixed
word for that element (a normal form ``g1^i g2^j`` when the pair admits one,
otherwise a breadth-first spanning tree of the Cayley graph). The extension
is a homomorphism exactly when it respects every Cayley-graph edge, which is
checked vectorized over a whole batch of candidate ``b`` at once.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .groups import GroupTable, _closure, frattini, quotient_map
from .errors import ContractViolation


@dataclass(frozen=True)
class WordScheme:
    gens: tuple[int, int]
    # normal form: element e == g1**I[e] * g2**J[e]
    I: np.ndarray | None = None
    J: np.ndarray | None = None
    # spanning tree: per layer, (nodes, parents, generator position)
    layers: tuple | None = None

    @property
    def is_normal_form(self) -> bool:
        return self.I is not None


def word_scheme(G: GroupTable, gens: tuple[int, int]) -> WordScheme:
    g1, g2 = gens
    if len(_closure(G, gens)) != G.order:
        raise ContractViolation(f"{gens} does not generate the group")
    n = G.order
    I = np.full(n, -1, dtype=np.int64)
    J = np.full(n, -1, dtype=np.int64)
    o1, o2 = int(G.element_orders[g1]), int(G.element_orders[g2])
    p1 = G.power(g1, np.arange(o1))
    for j in range(o2):
        elems = G.mul[p1, G.power(g2, j)]
        fresh = I[elems] < 0
        I[elems[fresh]] = np.arange(o1)[fresh]
        J[elems[fresh]] = j
    if (I >= 0).all():
        return WordScheme(gens, I=I, J=J)
    # no normal form: breadth-first tree over right multiplication
    parent = {0: None}
    frontier = [0]
    layers = []
    while frontier:
        nodes, parents, which = [], [], []
        for e in frontier:
            for k, g in enumerate(gens):
                f = int(G.mul[e, g])
                if f not in parent:
                    parent[f] = e
                    nodes.append(f)
                    parents.append(e)
                    which.append(k)
        if nodes:
            layers.append((np.array(nodes), np.array(parents), np.array(which)))
        frontier = nodes
    return WordScheme(gens, layers=tuple(layers))


def extend(G: GroupTable, scheme: WordScheme, H: GroupTable, a: int, bs: np.ndarray) -> np.ndarray:
    """Images of every element of ``G`` under ``g1 -> a, g2 -> b`` for each ``b`` in ``bs``.

    Returns a ``(len(bs), |G|)`` array. Rows need not be homomorphisms; see
    :func:`valid_rows`.
    """
    bs = np.asarray(bs, dtype=np.int64)
    if scheme.is_normal_form:
        left = H.power(a, scheme.I)[None, :]
        right = H.power(bs[:, None], scheme.J[None, :])
        return H.mul[left, right]
    phi = np.zeros((len(bs), G.order), dtype=np.int64)
    imgs = (np.full(len(bs), a, dtype=np.int64), bs)
    for nodes, parents, which in scheme.layers:
        for k in (0, 1):
            sel = which == k
            if sel.any():
                phi[:, nodes[sel]] = H.mul[phi[:, parents[sel]], imgs[k][:, None]]
    return phi


def valid_rows(G: GroupTable, scheme: WordScheme, H: GroupTable, phi: np.ndarray,
               a: int, bs: np.ndarray, bijective: bool = True) -> np.ndarray:
    """Mask of rows of ``phi`` that are homomorphisms (and bijections)."""
    bs = np.asarray(bs, dtype=np.int64)
    g1, g2 = scheme.gens
    ok = (phi[:, g1] == a) & (phi[:, g2] == bs)
    for g, img in ((g1, np.full(len(bs), a)), (g2, bs)):
        ok &= (phi[:, G.mul[:, g]] == H.mul[phi, img[:, None]]).all(axis=1)
    if bijective:
        if G.order != H.order:
            return np.zeros(len(bs), dtype=bool)
        ok &= (np.sort(phi, axis=1) == np.arange(H.order)[None, :]).all(axis=1)
    return ok


_GEN_CACHE: "weakref.WeakKeyDictionary[GroupTable, tuple]" = weakref.WeakKeyDictionary()


def generation_labels(H: GroupTable) -> tuple[np.ndarray, np.ndarray]:
    """Frattini-coset label per element and a table ``ok[i, j]`` telling
    whether elements with labels ``i, j`` generate ``H`` (2-groups only)."""
    hit = _GEN_CACHE.get(H)
    if hit is not None:
        return hit
    F = frattini(H)
    Q, coset_of = quotient_map(H, F)
    q = Q.order
    ok = np.zeros((q, q), dtype=bool)
    for i in range(q):
        for j in range(i, q):
            ok[i, j] = ok[j, i] = len(_closure(Q, (i, j))) == q
    _GEN_CACHE[H] = (coset_of, ok)
    return coset_of, ok


def candidate_matrix(G: GroupTable, gens: tuple[int, int], H: GroupTable,
                     relations=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Prefilter generator images, cheapest checks first.

    Returns ``(A, B, mask)`` where ``mask[i, j]`` marks pairs ``(A[i], B[j])``
    with matching element orders, satisfied relations (when ``relations``
    gives ``(m, n, r, s)`` for the pair) and, for 2-groups, generating ``H``.
    """
    g1, g2 = gens
    o = H.element_orders
    A = np.flatnonzero(o == G.element_orders[g1])
    B = np.flatnonzero(o == G.element_orders[g2])
    mask = np.ones((len(A), len(B)), dtype=bool)
    if relations is not None and len(A) and len(B):
        m, n, r, s = relations
        mask &= H.conjugate(B[None, :], A[:, None]) == H.power(A, r)[:, None]
        mask &= H.power(B, 2**n)[None, :] == H.power(A, s)[:, None]
    if H.is_2_group and len(A) and len(B):
        lab, ok = generation_labels(H)
        mask &= ok[lab[A][:, None], lab[B][None, :]]
    return A, B, mask


def find_isomorphism(G: GroupTable, H: GroupTable, gens=None, relations=None) -> np.ndarray | None:
    """An isomorphism ``G -> H`` as an image array, or ``None``."""
    if G.order != H.order:
        return None
    if gens is None:
        from .metacyclic import find_metacyclic_pair
        params, g1, g2 = find_metacyclic_pair(G)
        gens, relations = (g1, g2), (params.m, params.n, params.r, params.s)
    scheme = word_scheme(G, gens)
    A, B, mask = candidate_matrix(G, gens, H, relations)
    for i, a in enumerate(A.tolist()):
        bs = B[mask[i]]
        if not len(bs):
            continue
        phi = extend(G, scheme, H, a, bs)
        ok = valid_rows(G, scheme, H, phi, a, bs)
        if ok.any():
            return phi[np.argmax(ok)]
    return None


def is_homomorphism(G: GroupTable, H: GroupTable, phi) -> bool:
    """Exhaustive check over all pairs."""
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[G.mul], H.mul[phi[:, None], phi[None, :]]))
