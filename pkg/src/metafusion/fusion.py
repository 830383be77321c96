"""Essential-subgroup elimination and the nilpotency verdict for metacyclic 2-groups.

The filter applies necessary conditions for a subgroup ``Q < P`` to be
essential in some fusion system on ``P``. An empty survivor list together
with ``Aut(P)`` being a 2-group certifies that every fusion system on ``P``
is nilpotent; survivors on their own certify nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .automorphisms import aut_group_table, aut_summary, aut_summary_of, compute_aut
from .errors import ContractViolation, OrderCapExceeded, VerificationFailure
from .groups import (
    GroupTable,
    Subgroup,
    SWEEP_CAP,
    all_subgroups,
    centralizer,
    frattini,
    is_homocyclic,
    is_maximal_class,
    normalizer,
    omega,
    quotient,
    subgroup_from_members,
    subgroup_table,
)
from .metacyclic import Family, build, classify, enumerate_all, find_metacyclic_pair
from .report import SweepReport

LEMMA2_CAP = 2**7
THEOREM3_CAP = 2**7

REASONS = ("aut-is-2group", "quaternion-excluded", "not-centric", "omega-argument", "kernel-argument")


@dataclass(frozen=True)
class FrattiniAction:
    """Conjugation action of ``N_P(Q)/Q`` on the four cosets of ``Phi(Q)`` in ``Q``."""

    normalizer: Subgroup
    frattini: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    coset_reps: tuple[int, ...]  # one element of N_P(Q) per coset of Q
    permutations: tuple[tuple[int, ...], ...]

    @property
    def acting_order(self) -> int:
        return len(self.coset_reps)

    @property
    def kernel_order(self) -> int:
        ident = tuple(range(len(self.cosets)))
        return sum(1 for perm in self.permutations if perm == ident)

    @property
    def faithful(self) -> bool:
        return self.kernel_order == 1


@dataclass(frozen=True)
class EssentialCandidateReport:
    subgroup: Subgroup
    centric_in_P: bool
    aut_not_2group: bool
    shape: Family
    action_faithful: bool | None
    verdict: str
    elimination_reason: str | None
    notes: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        return {"q_order": self.subgroup.order, "q_shape": self.shape.name,
                "verdict": self.verdict, "reason": self.elimination_reason or ""}


@dataclass(frozen=True)
class Verdict:
    tag: str  # forced-nilpotent | not-forced
    reason: str | None = None  # maximal-class | homocyclic


def _frattini_in_parent(Q: Subgroup) -> Subgroup:
    T = subgroup_table(Q)
    F = frattini(T)
    return subgroup_from_members(Q.parent, [Q.members[i] for i in F.members])


def action_on_frattini_quotient(P: GroupTable, Q: Subgroup) -> FrattiniAction:
    F = _frattini_in_parent(Q)
    if Q.order // F.order != 4:
        raise ContractViolation(f"|Q/Phi(Q)| = {Q.order // F.order}, expected 4")
    label = np.full(P.order, -1, dtype=np.int64)
    cosets = []
    for q in Q.members:
        if label[q] < 0:
            coset = np.unique(P.mul[q, F.array])
            label[coset] = len(cosets)
            cosets.append(tuple(coset.tolist()))
    reps_of_q_cosets = np.array([c[0] for c in cosets])
    N = normalizer(P, Q)
    seen = np.zeros(P.order, dtype=bool)
    reps, perms = [], []
    for g in N.members:
        if seen[g]:
            continue
        seen[P.mul[g, Q.array]] = True
        reps.append(g)
        perms.append(tuple(label[P.conjugate(g, reps_of_q_cosets)].tolist()))
    return FrattiniAction(N, F, tuple(cosets), tuple(reps), tuple(perms))


def homocyclic_rank_exponent(Q: Subgroup) -> int | None:
    """``k`` when ``Q`` is isomorphic to ``C_{2^k} x C_{2^k}``, else ``None``."""
    order = Q.order
    k2 = order.bit_length() - 1
    if order < 4 or k2 % 2:
        return None
    T = subgroup_table(Q)
    if not is_homocyclic(T):
        return None
    return k2 // 2


def _out_has_strongly_embedded(Q: Subgroup) -> bool:
    """Whether ``Out(Q) = Aut(Q)/Inn(Q)`` has a strongly 2-embedded subgroup."""
    T = subgroup_table(Q)
    _, autos = compute_aut(T)
    A, ordered = aut_group_table(autos)
    index = {f.perm: i for i, f in enumerate(ordered)}
    idx = np.arange(T.order)
    inner = {index[tuple(T.conjugate(g, idx).tolist())] for g in range(T.order)}
    Out = quotient(A, subgroup_from_members(A, inner))
    return has_strongly_p_embedded(Out, 2)[0]


def essential_candidates(P: GroupTable) -> list[EssentialCandidateReport]:
    if not P.is_2_group:
        raise ContractViolation("essential_candidates expects a 2-group")
    if P.order > SWEEP_CAP:
        raise OrderCapExceeded(f"order {P.order} exceeds {SWEEP_CAP}")
    reports = []
    omega_P = None
    for Q in all_subgroups(P):
        if Q.order == P.order:
            continue
        T = subgroup_table(Q)
        shape = classify(T)
        aut = aut_summary_of(T)
        centric = centralizer(P, Q).issubset(Q)
        k = homocyclic_rank_exponent(Q)
        faithful = None
        notes = {}
        if k is not None:
            action = action_on_frattini_quotient(P, Q)
            faithful = action.faithful
            notes["kernel_order"] = action.kernel_order
            notes["acting_order"] = action.acting_order
        reason = None
        if aut.is_2_group:
            reason = "aut-is-2group"
        elif shape.tag == "quaternion":
            reason = "quaternion-excluded"
        elif not centric:
            reason = "not-centric"
        elif k == 1:
            if P.order != 8:
                if omega_P is None:
                    omega_P = omega(P)
                # Q = Omega(P) is normal and P/Q = N_P(Q)/C_P(Q) embeds in Aut(Q) ~ S3
                notes["omega_equals_q"] = omega_P == Q
                if omega_P == Q:
                    if P.order // Q.order <= 2:
                        raise VerificationFailure("omega argument: |P| <= 8 but |P| != 8")
                    reason = "omega-argument"
        elif k is not None and k >= 2:
            if not faithful:
                reason = "kernel-argument"
        verdict = "eliminated" if reason else "candidate"
        if verdict == "candidate":
            notes["out_strongly_2_embedded"] = _out_has_strongly_embedded(Q)
        reports.append(EssentialCandidateReport(Q, centric, not aut.is_2_group, shape,
                                                faithful, verdict, reason, notes))
    return reports


def candidates_only(reports) -> list[EssentialCandidateReport]:
    return [r for r in reports if r.verdict == "candidate"]


def has_strongly_p_embedded(G: GroupTable, p: int) -> tuple[bool, Subgroup | None]:
    """Brute force over all proper subgroups ``H`` with ``p`` dividing ``|H|``."""
    if G.order > 2**10:
        raise OrderCapExceeded("strong embedding check is for small groups")
    idx = np.arange(G.order)
    for H in all_subgroups(G, method="fixpoint"):
        if H.order == G.order or H.order % p:
            continue
        outside = idx[~H.mask]
        conj = G.conjugate(outside[:, None], H.array[None, :])
        inter = H.mask[conj].sum(axis=1)
        if not (inter % p == 0).any():
            return True, H
    return False, None


def nilpotency_verdict(P: GroupTable, cross_check: bool = True) -> Verdict:
    """Forced-nilpotent unless ``P`` has maximal class or is homocyclic.

    With ``cross_check`` the two pillars of the argument are verified for a
    forced verdict: no essential candidates and ``Aut(P)`` a 2-group.
    """
    find_metacyclic_pair(P)  # refuses non-metacyclic input
    if is_maximal_class(P):
        return Verdict("not-forced", "maximal-class")
    if is_homocyclic(P):
        return Verdict("not-forced", "homocyclic")
    verdict = Verdict("forced-nilpotent")
    if cross_check:
        if candidates_only(essential_candidates(P)):
            raise VerificationFailure("forced-nilpotent group has essential candidates")
        if not aut_summary_of(P).is_2_group:
            raise VerificationFailure("forced-nilpotent group has Aut(P) of non-2-power order")
    return verdict


LEMMA2_COLUMNS = ("order", "params", "name", "q_members", "k", "acting_order",
                  "kernel_order", "faithful", "verdict")


def lemma2_sweep(max_order: int) -> SweepReport:
    if max_order > LEMMA2_CAP:
        raise OrderCapExceeded(f"lemma2 sweep is limited to order {LEMMA2_CAP}")
    report = SweepReport("lemma2", max_order, LEMMA2_COLUMNS)
    tallies = {}
    for p, fam in enumerate_all(max_order):
        P = build(p)
        counts = {}
        for Q in all_subgroups(P):
            k = homocyclic_rank_exponent(Q)
            if k is None or k < 2 or Q.order == P.order:
                continue
            counts[k] = counts.get(k, 0) + 1
            action = action_on_frattini_quotient(P, Q)
            report.add(order=p.order, params=str(p), name=fam.name,
                       q_members=_short_members(Q), k=k, acting_order=action.acting_order,
                       kernel_order=action.kernel_order, faithful=action.faithful,
                       verdict="FAIL" if action.faithful else "pass")
        if counts:
            tallies[f"{fam.name} [{p}]"] = {str(k): v for k, v in sorted(counts.items())}
    report.extra["homocyclic_subgroup_counts"] = tallies
    return report


def _short_members(Q: Subgroup) -> str:
    gens = Q.generators
    return "<" + ",".join(Q.parent.labels[g] for g in gens) + ">"


THEOREM3_COLUMNS = ("order", "params", "family", "name", "verdict", "reason", "candidates",
                    "candidate_orders", "aut_odd_part", "status")


def theorem3_sweep(max_order: int) -> SweepReport:
    if max_order > THEOREM3_CAP:
        raise OrderCapExceeded(f"theorem3 sweep is limited to order {THEOREM3_CAP}")
    report = SweepReport("theorem3", max_order, THEOREM3_COLUMNS, status_column="status")
    for p, fam in enumerate_all(max_order):
        P = build(p)
        v = nilpotency_verdict(P, cross_check=False)
        survivors = candidates_only(essential_candidates(P))
        odd = aut_summary(p).odd_part
        forced = v.tag == "forced-nilpotent"
        ok = forced == (fam.tag not in {"dihedral", "semidihedral", "quaternion", "homocyclic"})
        if forced:
            ok &= not survivors and odd == 1
        if fam.tag == "dihedral":
            ok &= bool(survivors)
        report.add(order=p.order, params=str(p), family=fam.tag, name=fam.name,
                   verdict=v.tag, reason=v.reason or "", candidates=len(survivors),
                   candidate_orders=[r.subgroup.order for r in survivors],
                   aut_odd_part=odd, status="pass" if ok else "FAIL")
    return report
