"""Small permutation groups: Sylow 2-subgroups and normal 2-complements.

Groups are enumerated in full (no stabilizer chains); the corpus groups have
at most a few hundred elements.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import InputError, NotMetacyclicError, OrderCapExceeded
from .fusion import Verdict, nilpotency_verdict
from .groups import TABLE_CAP, GroupTable, _closure, is_normal, subgroup_from_members
from .metacyclic import classify
from .report import SweepReport

ELEMENT_CAP = 10_000
ORACLE_CAP = 500

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """``p * q``: apply ``q`` first, then ``p``."""
    return tuple(p[i] for i in q)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if not seen[start]:
            k, i = 0, start
            while not seen[i]:
                seen[i] = True
                i = p[i]
                k += 1
            lengths.append(k)
    return math.lcm(*lengths) if lengths else 1


def cycle_string(p: Perm) -> str:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc, i = [], start
        while not seen[i]:
            seen[i] = True
            cyc.append(str(i))
            i = p[i]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


@dataclass
class PermGroup:
    degree: int
    generators: list[Perm]
    name: str = ""
    cap: int = ELEMENT_CAP

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = tuple(int(i) for i in g)
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise InputError(f"generator {list(g)} is not a permutation of {self.degree} points")
            gens.append(g)
        self.generators = gens

    @cached_property
    def elements(self) -> list[Perm]:
        return enumerate_elements(self)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @classmethod
    def from_json(cls, doc: dict) -> "PermGroup":
        try:
            return cls(int(doc["degree"]), [list(g) for g in doc["generators"]], doc.get("name", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed permutation-group document: {exc}") from None

    @classmethod
    def load(cls, path) -> "PermGroup":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
        G = cls.from_json(doc)
        G.name = G.name or path.stem
        return G

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree,
                "generators": [list(g) for g in self.generators]}


def enumerate_elements(G: PermGroup) -> list[Perm]:
    """Breadth-first closure from the identity; deterministic order."""
    identity = tuple(range(G.degree))
    seen = {identity}
    out = [identity]
    for e in out:
        for g in G.generators:
            f = compose(e, g)
            if f not in seen:
                if len(out) >= G.cap:
                    raise OrderCapExceeded(f"group has more than {G.cap} elements")
                seen.add(f)
                out.append(f)
    return out


def to_table(G: PermGroup) -> GroupTable:
    elems = G.elements
    if len(elems) > TABLE_CAP:
        raise OrderCapExceeded(f"order {len(elems)} exceeds the table cap {TABLE_CAP}")
    E = np.array(elems, dtype=np.int64).reshape(len(elems), G.degree)
    index = {e: i for i, e in enumerate(elems)}
    mul = np.empty((len(elems), len(elems)), dtype=np.int64)
    for b in range(len(elems)):
        # (a*b)[i] = a[b[i]] for every a at once
        prods = E[:, E[b]] if G.degree else E
        mul[:, b] = [index[tuple(row)] for row in prods.tolist()]
    return GroupTable(mul, labels=[cycle_string(e) for e in elems],
                      source="permutation-generators")


def _two_part(n: int) -> int:
    return n & -n


def _closure_perm(gens: list[Perm], degree: int) -> list[Perm]:
    return enumerate_elements(PermGroup(degree, list(gens)))


def _normalizes(h: Perm, gens: list[Perm], members: frozenset) -> bool:
    h_inv = tuple(np.argsort(h).tolist())
    return all(compose(compose(h, g), h_inv) in members for g in gens)


def sylow_2(G: PermGroup) -> PermGroup:
    """A Sylow 2-subgroup by normalizer ascent.

    Start from a 2-element of largest order, then repeatedly adjoin a
    2-element that normalizes the current subgroup without lying in it.
    """
    target = _two_part(G.order)
    two_elements = [g for g in G.elements if _two_part(perm_order(g)) == perm_order(g)]
    start = max(two_elements, key=perm_order)  # identity when |G| is odd
    gens = [start] if perm_order(start) > 1 else []
    members = frozenset(_closure_perm(gens, G.degree))
    while len(members) < target:
        for h in two_elements:
            if h not in members and _normalizes(h, gens, members):
                gens.append(h)
                members = frozenset(_closure_perm(gens, G.degree))
                break
        else:
            raise AssertionError("normalizer ascent stalled below the 2-part")
    S = PermGroup(G.degree, gens, name=f"Syl2({G.name})" if G.name else "")
    if S.order != target:
        raise AssertionError("Sylow subgroup has the wrong order")
    return S


def has_normal_2_complement(G: PermGroup) -> bool:
    """The odd-order elements form a subgroup of index ``|G|_2``."""
    odd = [g for g in G.elements if perm_order(g) % 2]
    if len(odd) != G.order // _two_part(G.order):
        return False
    K = frozenset(odd)
    return all(compose(a, b) in K for a in odd for b in odd)


def normal_2_complement_oracle(G: PermGroup) -> bool:
    """Search all odd-order subgroups for a normal one of 2-power index."""
    if G.order > ORACLE_CAP:
        raise OrderCapExceeded(f"oracle is limited to order {ORACLE_CAP}")
    T = to_table(G)
    target = G.order // _two_part(G.order)
    odd_elems = [g for g in range(T.order) if T.element_orders[g] % 2]
    found = {_closure(T, [g]) for g in odd_elems}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for g in odd_elems:
                if g in H:
                    continue
                K = _closure(T, (*H, g), H)
                if len(K) % 2 == 0 or K in found:
                    continue
                found.add(K)
                new.append(K)
        frontier = new
    return any(len(H) == target and is_normal(T, subgroup_from_members(T, H)) for H in found)


@dataclass
class WitnessReport:
    name: str
    order: int
    sylow_order: int
    sylow_name: str
    verdict: Verdict | None
    two_nilpotent: bool
    status: str  # consistent | converse-witness | out-of-scope | FAIL
    notes: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.status != "FAIL"

    def row(self) -> dict:
        return {"name": self.name, "order": self.order, "sylow_order": self.sylow_order,
                "sylow": self.sylow_name,
                "verdict": self.verdict.tag if self.verdict else "out-of-scope",
                "reason": (self.verdict.reason or "") if self.verdict else "",
                "two_nilpotent": self.two_nilpotent, "status": self.status}


def witness_check(G: PermGroup) -> WitnessReport:
    S = sylow_2(G)
    n2 = has_normal_2_complement(G)
    if S.order == 1:
        return WitnessReport(G.name, G.order, 1, "C1", Verdict("forced-nilpotent"), n2,
                             "consistent" if n2 else "FAIL")
    ST = to_table(S)
    try:
        fam = classify(ST)
        verdict = nilpotency_verdict(ST)
    except NotMetacyclicError:
        return WitnessReport(G.name, G.order, S.order, "non-metacyclic", None, n2, "out-of-scope")
    if verdict.tag == "forced-nilpotent":
        status = "consistent" if n2 else "FAIL"
    else:
        status = "consistent" if n2 else "converse-witness"
    return WitnessReport(G.name, G.order, S.order, fam.name, verdict, n2, status,
                         {"sylow_family": fam.tag})


WITNESS_COLUMNS = ("name", "order", "sylow_order", "sylow", "verdict", "reason",
                   "two_nilpotent", "status")


def builtin_corpus_dir() -> Path:
    return Path(str(resources.files("metafusion") / "corpus"))


def load_corpus(directory=None) -> list[PermGroup]:
    directory = Path(directory) if directory is not None else builtin_corpus_dir()
    if not directory.is_dir():
        raise InputError(f"corpus directory {directory} does not exist")
    return [PermGroup.load(path) for path in sorted(directory.glob("*.json"))]


def corpus_report(directory=None) -> SweepReport:
    groups = load_corpus(directory)
    report = SweepReport("witness", max(G.order for G in groups) if groups else 0,
                         WITNESS_COLUMNS, status_column="status")
    witnessed = set()
    for G in groups:
        w = witness_check(G)
        report.add(**w.row())
        if w.status == "converse-witness":
            witnessed.add(w.notes["sylow_family"])
    report.extra["converse_witness_families"] = sorted(witnessed)
    return report
