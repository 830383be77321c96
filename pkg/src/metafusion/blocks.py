"""Numerical invariants of 2-blocks with metacyclic defect group.

Nilpotent blocks take their invariants from the defect group itself
(character degrees, class number, abelianization). The remaining cases are
closed formulas in ``n = log2 |D|`` selected by an explicit fusion case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError, VerificationFailure
from .groups import SWEEP_CAP, conjugacy_classes, derived_subgroup
from .metacyclic import (
    Family,
    MetacyclicParams,
    build,
    check_params,
    classify,
    enumerate_all,
    standard_family,
)
from .report import SweepReport

FUSION_CASES = ("nilpotent", "dihedral-l2", "dihedral-l3", "quaternion8", "quaternion-a",
                "quaternion-b", "semidihedral-a", "semidihedral-b", "semidihedral-c",
                "homocyclic-e3")


@dataclass(frozen=True)
class DefectGroupDescriptor:
    params: MetacyclicParams | None = None
    family: str | None = None
    order: int | None = None

    def resolve(self) -> MetacyclicParams:
        if self.params is not None:
            return check_params(self.params)
        if self.family is None or self.order is None:
            raise InputError("a defect group needs params or a (family, order) pair")
        return standard_family(self.family, self.order)

    @property
    def classified(self) -> Family:
        return _classified(self.resolve())


@lru_cache(maxsize=None)
def _classified(p: MetacyclicParams) -> Family:
    return classify(build(p))


@dataclass(frozen=True)
class BlockInvariants:
    k: int
    heights: dict = field(hash=False)
    l: int

    def height(self, i: int) -> int:
        return self.heights.get(i, 0)

    @property
    def k0(self) -> int:
        return self.height(0)

    @property
    def k1(self) -> int:
        return self.height(1)

    def check(self):
        if sum(self.heights.values()) != self.k:
            raise VerificationFailure(f"height counts {self.heights} do not sum to k = {self.k}")
        if any(v <= 0 for v in self.heights.values()) or self.l <= 0:
            raise VerificationFailure("block invariants must be positive where present")
        return self


def _orbit_sizes(r: int, modulus: int) -> list[int]:
    seen = [False] * modulus
    sizes = []
    for a in range(modulus):
        if seen[a]:
            continue
        size, b = 0, a
        while not seen[b]:
            seen[b] = True
            b = b * r % modulus
            size += 1
        sizes.append(size)
    return sizes


def clifford_degrees(p: MetacyclicParams) -> dict[int, int]:
    """Degree distribution from orbits of the action on characters of ``<x>``.

    ``D/<x>`` is cyclic of order ``2^n``, so every character of ``<x>`` extends
    to its stabilizer; an orbit of size ``t`` yields ``2^n / t`` characters of
    degree ``t``.
    """
    check_params(p)
    N = 2**p.n
    out: dict[int, int] = {}
    for t in _orbit_sizes(p.r, 2**p.m):
        out[t] = out.get(t, 0) + N // t
    return dict(sorted(out.items()))


@lru_cache(maxsize=None)
def class_count(p: MetacyclicParams) -> int:
    return len(conjugacy_classes(build(p)))


@lru_cache(maxsize=None)
def abelianization_order(p: MetacyclicParams) -> int:
    G = build(p)
    return G.order // derived_subgroup(G).order


def character_degree_distribution(p: MetacyclicParams) -> dict[int, int]:
    """``{degree: count}``, checked against the class number and ``|D|``."""
    if p.order > SWEEP_CAP:
        raise InputError(f"order {p.order} exceeds {SWEEP_CAP}")
    degrees = clifford_degrees(p)
    if sum(degrees.values()) != class_count(p):
        raise VerificationFailure(f"{p}: character count differs from the class number")
    if sum(c * d * d for d, c in degrees.items()) != p.order:
        raise VerificationFailure(f"{p}: squared degrees do not sum to the group order")
    return degrees


def admissible_cases(d: DefectGroupDescriptor) -> list[str]:
    fam = d.classified
    n = fam.order.bit_length() - 1
    cases = ["nilpotent"]
    if fam.tag == "dihedral":
        cases += ["dihedral-l2", "dihedral-l3"]
    elif fam.tag == "quaternion":
        cases += ["quaternion8"] if n == 3 else ["quaternion-a", "quaternion-b"]
    elif fam.tag == "semidihedral":
        cases += ["semidihedral-a", "semidihedral-b", "semidihedral-c"]
    elif fam.tag == "homocyclic":
        cases += ["homocyclic-e3"]
    return cases


def block_invariants(d: DefectGroupDescriptor, case: str) -> BlockInvariants:
    if case not in FUSION_CASES:
        raise InputError(f"unknown fusion case {case!r}")
    allowed = admissible_cases(d)
    if case not in allowed:
        fam = d.classified
        raise InputError(f"case {case!r} is not admissible for {fam.name} "
                         f"(admissible: {', '.join(allowed)})")
    p = d.resolve()
    size = p.order
    n = size.bit_length() - 1
    base = 2 ** (n - 2) if n >= 2 else 0
    if case == "nilpotent":
        degrees = character_degree_distribution(p)
        heights = {d.bit_length() - 1: c for d, c in degrees.items()}
        if heights.get(0) != abelianization_order(p):
            raise VerificationFailure(f"{p}: linear characters differ from |D:D'|")
        inv = BlockInvariants(class_count(p), heights, 1)
    elif case.startswith("dihedral"):
        inv = BlockInvariants(base + 3, {0: 4, 1: base - 1}, 2 if case == "dihedral-l2" else 3)
    elif case == "quaternion8":
        inv = BlockInvariants(7, {0: 4, 1: 3}, 3)
    elif case == "quaternion-a":
        inv = BlockInvariants(base + 4, {0: 4, 1: base - 1, n - 2: 1}, 2)
    elif case == "quaternion-b":
        inv = BlockInvariants(base + 5, {0: 4, 1: base - 1, n - 2: 2}, 3)
    elif case == "semidihedral-a":
        inv = BlockInvariants(base + 3, {0: 4, 1: base - 1}, 2)
    elif case in ("semidihedral-b", "semidihedral-c"):
        inv = BlockInvariants(base + 4, {0: 4, 1: base - 1, n - 2: 1},
                              2 if case == "semidihedral-b" else 3)
    else:  # homocyclic-e3
        k = (size + 8) // 3
        inv = BlockInvariants(k, {0: k}, 3)
    return inv.check()


TABLE_COLUMNS = ("family", "order", "case", "k", "k0", "k1", "kn2", "l")


def invariants_row(d: DefectGroupDescriptor, case: str) -> dict:
    inv = block_invariants(d, case)
    fam = d.classified
    n = fam.order.bit_length() - 1
    return {"family": fam.tag, "order": fam.order, "case": case, "k": inv.k,
            "k0": inv.k0, "k1": inv.k1, "kn2": inv.height(n - 2) if n >= 2 else 0,
            "l": inv.l, "heights": {str(i): c for i, c in sorted(inv.heights.items())}}


def theorem4_table(min_order: int = 8, max_order: int = 64) -> list[dict]:
    """Every non-nilpotent case for the maximal-class and homocyclic families."""
    rows = []
    for fam in ("dihedral", "quaternion", "semidihedral", "homocyclic"):
        order = 4 if fam == "homocyclic" else min_order
        while order <= max_order:
            try:
                d = DefectGroupDescriptor(family=fam, order=order)
                d.resolve()
            except InputError:
                order *= 2
                continue
            for case in admissible_cases(d)[1:]:
                rows.append(invariants_row(d, case))
            order *= 2
    return rows


DEGREE_COLUMNS = ("order", "params", "name", "degrees", "clifford_count", "class_count",
                  "sum_squares", "linear", "abelianization_index", "verdict")


def degrees_sweep(max_order: int) -> SweepReport:
    """Clifford-orbit degrees against brute-force invariants, per metacyclic type."""
    report = SweepReport("degrees", max_order, DEGREE_COLUMNS)
    for p, fam in enumerate_all(max_order):
        degrees = clifford_degrees(p)
        count = sum(degrees.values())
        squares = sum(c * d * d for d, c in degrees.items())
        linear = degrees.get(1, 0)
        classes, ab = class_count(p), abelianization_order(p)
        ok = count == classes and squares == p.order and linear == ab
        report.add(order=p.order, params=str(p), name=fam.name,
                   degrees=",".join(f"{d}:{c}" for d, c in degrees.items()),
                   clifford_count=count, class_count=classes, sum_squares=squares,
                   linear=linear, abelianization_index=ab, verdict="pass" if ok else "FAIL")
    return report
