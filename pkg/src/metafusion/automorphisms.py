"""Automorphism groups of 2-generated 2-groups by generator-image search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractViolation, InputError, OrderCapExceeded, VerificationFailure
from .groups import SWEEP_CAP, GroupTable, Subgroup, _check_indices, quotient_map
from .metacyclic import (
    MetacyclicParams,
    canonical_params,
    build,
    enumerate_all,
    find_metacyclic_pair,
    generators,
)
from .morphisms import candidate_matrix, extend, valid_rows, word_scheme
from .report import SweepReport


@dataclass(frozen=True)
class Automorphism:
    images: tuple[int, ...]
    perm: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.perm[g]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        perm = tuple(self.perm[g] for g in other.perm)
        return Automorphism(tuple(self.perm[g] for g in other.images), perm)

    @property
    def is_identity(self) -> bool:
        return all(i == g for g, i in enumerate(self.perm))

    @property
    def order(self) -> int:
        seen = [False] * len(self.perm)
        lengths = []
        for start in range(len(self.perm)):
            if seen[start]:
                continue
            k, g = 0, start
            while not seen[g]:
                seen[g] = True
                g = self.perm[g]
                k += 1
            lengths.append(k)
        return math.lcm(*lengths)


def odd_part(n: int) -> int:
    while n % 2 == 0 and n:
        n //= 2
    return n


@dataclass(frozen=True)
class AutGroupSummary:
    order: int
    is_2_group: bool
    odd_part: int
    generator_images: tuple[tuple[int, int], ...]

    @classmethod
    def from_images(cls, images) -> "AutGroupSummary":
        order = len(images)
        odd = odd_part(order)
        return cls(order, odd == 1, odd, tuple(images))


def _presentation(P: GroupTable, gens):
    if gens is not None:
        gens = tuple(_check_indices(P, gens))
        if len(gens) != 2:
            raise InputError("a generating pair is required")
        return gens, None
    if P.source == "metacyclic-params" and P.params is not None:
        p = P.params
    else:
        p, g1, g2 = find_metacyclic_pair(P)
        return (g1, g2), (p.m, p.n, p.r, p.s)
    return generators(p), (p.m, p.n, p.r, p.s)


def compute_aut(P: GroupTable, gens=None, materialize: bool = True
                ) -> tuple[AutGroupSummary, list[Automorphism]]:
    """All automorphisms of a 2-generated 2-group.

    With ``gens=None`` the pair comes from the group's metacyclic
    presentation, so candidate images can be filtered by the defining
    relations and counted without extension when ``materialize`` is false.
    An explicit ``gens`` pair is handled by full extension and an edge check.
    """
    if P.order > SWEEP_CAP:
        raise OrderCapExceeded(f"automorphism search is limited to order {SWEEP_CAP}")
    if P.order == 1:
        return AutGroupSummary(1, True, 1, ((0, 0),)), [Automorphism((0, 0), (0,))]
    gens, relations = _presentation(P, gens)
    scheme = word_scheme(P, gens)  # also checks that gens generate
    A, B, mask = candidate_matrix(P, gens, P, relations)
    if relations is not None and not materialize:
        ia, ib = np.nonzero(mask)
        images = list(zip(A[ia].tolist(), B[ib].tolist()))
        return AutGroupSummary.from_images(images), []
    images, autos = [], []
    for i, a in enumerate(A.tolist()):
        bs = B[mask[i]]
        if not len(bs):
            continue
        phi = extend(P, scheme, P, a, bs)
        ok = valid_rows(P, scheme, P, phi, a, bs)
        if relations is not None and not ok.all():
            raise VerificationFailure("relation-satisfying generator images failed to extend")
        for row, b in zip(phi[ok].tolist(), bs[ok].tolist()):
            images.append((a, b))
            autos.append(Automorphism((a, b), tuple(row)))
    return AutGroupSummary.from_images(images), autos


@lru_cache(maxsize=None)
def _aut_summary_canonical(p: MetacyclicParams) -> AutGroupSummary:
    return compute_aut(build(p), materialize=False)[0]


def aut_summary(p: MetacyclicParams) -> AutGroupSummary:
    """Cached automorphism-group summary for ``build(p)``."""
    return _aut_summary_canonical(canonical_params(p))


def aut_summary_of(G: GroupTable) -> AutGroupSummary:
    """Summary for any metacyclic 2-group table (recognized first)."""
    if G.order == 1:
        return compute_aut(G)[0]
    p, _, _ = find_metacyclic_pair(G)
    return aut_summary(p)


def is_automorphism(P: GroupTable, phi: Automorphism) -> bool:
    perm = np.array(phi.perm)
    if perm[0] != 0 or sorted(phi.perm) != list(range(P.order)):
        return False
    return bool(np.array_equal(perm[P.mul], P.mul[perm[:, None], perm[None, :]]))


def aut_group_table(autos: list[Automorphism]) -> tuple[GroupTable, list[Automorphism]]:
    """The automorphisms as a group table under composition.

    Returns the table and the automorphisms in table order (identity first).
    """
    autos = sorted(autos, key=lambda f: (not f.is_identity, f.perm))
    index = {f.perm: i for i, f in enumerate(autos)}
    perms = np.array([f.perm for f in autos])
    mul = np.empty((len(autos), len(autos)), dtype=np.int64)
    for i in range(len(autos)):
        # autos[i] after autos[j]
        composed = perms[i][perms]
        for j, row in enumerate(map(tuple, composed.tolist())):
            if row not in index:
                raise ContractViolation("automorphism set is not closed under composition")
            mul[i, j] = index[row]
    return GroupTable(mul, source="permutation-generators"), autos


def restrict_to_quotient(P: GroupTable, phi: Automorphism, N: Subgroup) -> Automorphism:
    """Automorphism induced on ``quotient(P, N)`` (indices refer to that table)."""
    if {phi.perm[g] for g in N.members} != N.member_set:
        raise ContractViolation("automorphism does not stabilize the subgroup")
    Q, coset_of = quotient_map(P, N)
    reps = np.full(Q.order, -1, dtype=np.int64)
    for g in range(P.order - 1, -1, -1):
        reps[coset_of[g]] = g
    perm = np.array(phi.perm)
    induced = coset_of[perm[reps]]
    images = tuple(int(coset_of[phi.perm[g]]) for g in phi.images)
    return Automorphism(images, tuple(induced.tolist()))


LEMMA1_COLUMNS = ("order", "params", "family", "name", "aut_order", "odd_part", "exception", "verdict")


def is_aut_exception(family) -> bool:
    return family.tag == "homocyclic" or (family.tag == "quaternion" and family.order == 8)


def lemma1_sweep(max_order: int) -> SweepReport:
    """|Aut(P)| for every metacyclic type; odd part must be 1 exactly off the
    homocyclic groups and Q8."""
    report = SweepReport("lemma1", max_order, LEMMA1_COLUMNS)
    exceptions = []
    for p, fam in enumerate_all(max_order):
        summary = aut_summary(p)
        expected = is_aut_exception(fam)
        ok = (summary.odd_part > 1) == expected
        if summary.odd_part > 1:
            exceptions.append(fam.name)
        report.add(order=p.order, params=str(p), family=fam.tag, name=fam.name,
                   aut_order=summary.order, odd_part=summary.odd_part,
                   exception=summary.odd_part > 1, verdict="pass" if ok else "FAIL")
    report.extra["exceptions"] = exceptions
    return report
