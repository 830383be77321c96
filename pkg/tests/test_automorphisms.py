import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from metafusion.automorphisms import (
    Automorphism,
    aut_group_table,
    aut_summary,
    compute_aut,
    is_automorphism,
    lemma1_sweep,
    odd_part,
    restrict_to_quotient,
)
from metafusion.errors import ContractViolation
from metafusion.groups import frattini, generate_closure
from metafusion.metacyclic import MetacyclicParams, all_valid_params, build, enumerate_all

TYPES_32 = [p for p, _ in enumerate_all(32)]
TYPES_64 = [p for p, _ in enumerate_all(64)]

V4 = MetacyclicParams(1, 1, 1, 0)
Q8 = MetacyclicParams(2, 1, 3, 2)
D8 = MetacyclicParams(2, 1, 3, 0)
C44 = MetacyclicParams(2, 2, 1, 0)
M16 = MetacyclicParams(3, 1, 5, 0)


def test_aut_examples():
    assert aut_summary(V4).order == 6
    q8 = aut_summary(Q8)
    assert (q8.order, q8.odd_part, q8.is_2_group) == (24, 3, False)
    d8 = aut_summary(D8)
    assert d8.order == 8 and d8.is_2_group
    assert aut_summary(M16).is_2_group
    assert aut_summary(C44).odd_part % 3 == 0


@pytest.mark.parametrize("p", [p for p in TYPES_32 if p.order <= 16], ids=str)
def test_aut_order_against_brute_force(p):
    G = build(p)
    x, y = 1, (2**p.m if p.n else p.s)
    assert compute_aut(G)[0].order == oracles.count_automorphisms(G.rows, x, y)


@pytest.mark.parametrize("p", TYPES_64, ids=str)
def test_counting_mode_matches_materialized(p):
    G = build(p)
    counted = compute_aut(G, materialize=False)[0]
    summary, autos = compute_aut(G)
    assert counted.order == summary.order == len(autos)
    assert summary.order == odd_part(summary.order) * (summary.order // odd_part(summary.order))
    assert summary.is_2_group == (summary.odd_part == 1)


@pytest.mark.parametrize("p", [p for p in TYPES_32 if p.order >= 4], ids=str)
def test_automorphisms_are_homomorphisms(p):
    G = build(p)
    _, autos = compute_aut(G)
    for phi in autos:
        assert phi.perm[0] == 0
        assert is_automorphism(G, phi)
        assert oracles.is_automorphism(G.rows, list(phi.perm))


@given(st.sampled_from(TYPES_64), st.integers(0, 10**6))
def test_aut_order_independent_of_generating_pair(p, seed):
    G = build(p)
    pairs = [(a, b) for a, b in itertools.product(range(G.order), repeat=2)
             if generate_closure(G, [a, b]).order == G.order]
    a, b = pairs[seed % len(pairs)]
    assert compute_aut(G, gens=(a, b))[0].order == aut_summary(p).order


def test_non_generating_pair_refused():
    G = build(D8)
    with pytest.raises(ContractViolation):
        compute_aut(G, gens=(1, 2))


@pytest.mark.parametrize("p", [p for p in TYPES_32 if p.order >= 4], ids=str)
def test_composition_closure(p):
    G = build(p)
    _, autos = compute_aut(G)
    table, ordered = aut_group_table(autos)  # raises if not closed
    assert table.order == len(autos) and ordered[0].is_identity
    perms = {f.perm for f in autos}
    for f in autos[:6]:
        for g in autos[:6]:
            assert f.compose(g).perm in perms


@pytest.mark.parametrize("p", [p for p in TYPES_64 if p.order >= 4], ids=str)
def test_odd_automorphisms_act_nontrivially_mod_frattini(p):
    G = build(p)
    _, autos = compute_aut(G)
    F = frattini(G)
    for phi in autos:
        if phi.order % 2:
            induced = restrict_to_quotient(G, phi, F)
            assert phi.is_identity or not induced.is_identity


def test_restrict_to_quotient_examples():
    G = build(C44)
    _, autos = compute_aut(G)
    ident = next(f for f in autos if f.is_identity)
    F = frattini(G)
    assert restrict_to_quotient(G, ident, F).is_identity
    phi = next(f for f in autos if f.order == 3)
    assert restrict_to_quotient(G, phi, F).order == 3
    same = restrict_to_quotient(G, phi, G.trivial)
    assert same.perm == phi.perm
    X = generate_closure(G, [1])
    mover = next(f for f in autos if {f(g) for g in X.members} != X.member_set)
    with pytest.raises(ContractViolation):
        restrict_to_quotient(G, mover, X)


def test_automorphism_helpers():
    swap = Automorphism((2, 1), (0, 2, 1, 3))
    assert swap.order == 2 and not swap.is_identity
    assert swap.compose(swap).is_identity


def test_lemma1_sweep_order_8():
    report = lemma1_sweep(8)
    assert report.ok
    assert sorted(report.extra["exceptions"]) == ["C2^2", "Q8"]
    assert [r["params"] for r in report.rows] == [str(p) for p, _ in enumerate_all(8)]


def test_lemma1_sweep_tsv_columns():
    tsv = lemma1_sweep(4).to_tsv().splitlines()
    assert tsv[0].split("\t") == ["order", "params", "family", "name", "aut_order",
                                  "odd_part", "exception", "verdict"]
    assert len(tsv) == 4


@pytest.mark.parametrize("p", sorted(all_valid_params(16)), ids=str)
def test_aut_summary_is_invariant_on_parameter_tuples(p):
    assert aut_summary(p).order == compute_aut(build(p))[0].order
