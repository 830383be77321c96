import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from metafusion.errors import ContractViolation, InputError, OrderCapExceeded
from metafusion.groups import (
    GroupTable,
    all_subgroups,
    center,
    centralizer,
    conjugacy_classes,
    derived_subgroup,
    element_order,
    exponent,
    frattini,
    generate_closure,
    invariant_factors,
    is_homocyclic,
    is_normal,
    lower_central_series,
    nilpotency_class,
    normalizer,
    omega,
    quotient,
    subgroup_from_members,
)
from metafusion.metacyclic import MetacyclicParams, all_valid_params, build, standard_family

SMALL = sorted(all_valid_params(64))
TINY = [p for p in SMALL if p.order <= 32]

D8 = MetacyclicParams(2, 1, 3, 0)
Q8 = MetacyclicParams(2, 1, 3, 2)
C4 = MetacyclicParams(2, 0, 1, 0)
M16 = MetacyclicParams(3, 1, 5, 0)


def idx(p, i, j):
    return j * 2**p.m + i


@pytest.mark.parametrize("p", TINY, ids=str)
def test_build_matches_naive_table(p):
    assert build(p).mul.tolist() == oracles.metacyclic_table(p.m, p.n, p.r, p.s)


@given(st.sampled_from(SMALL))
def test_table_axioms(p):
    G = build(p)
    n = G.order
    assert n & (n - 1) == 0
    assert (G.mul[0] == np.arange(n)).all() and (G.mul[:, 0] == np.arange(n)).all()
    assert (G.mul[np.arange(n), G.inv] == 0).all()
    a, b, c = np.random.default_rng(0).integers(0, n, size=(3, 2000))
    assert (G.mul[G.mul[a, b], c] == G.mul[a, G.mul[b, c]]).all()


def test_constructor_rejects_non_groups():
    with pytest.raises(ContractViolation):
        GroupTable([[0, 1], [1, 1]])
    nonassoc = [[0, 1, 2], [1, 0, 0], [2, 2, 0]]  # not a Latin square either
    with pytest.raises(ContractViolation):
        GroupTable(nonassoc)
    with pytest.raises(InputError):
        GroupTable([[0, 1], [1, 0]], source="bogus")
    with pytest.raises(OrderCapExceeded):
        GroupTable(np.zeros((513, 513), dtype=int), check=False)


def test_json_round_trip():
    G = build(Q8)
    H = GroupTable.from_json(G.to_json())
    assert (H.mul == G.mul).all() and H.labels == G.labels and H.source == G.source


def test_generate_closure_examples():
    G = build(D8)
    assert generate_closure(G, []).members == (0,)
    assert generate_closure(G, [idx(D8, 1, 0)]).order == 4
    Q = build(Q8)
    H = generate_closure(Q, [idx(Q8, 0, 1)])
    assert H.order == 4 and idx(Q8, 2, 0) in H
    assert H.members == tuple(sorted(oracles.closure(Q.rows, [idx(Q8, 0, 1)])))


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 10**6), max_size=3))
def test_closure_and_lagrange(p, raw):
    G = build(p)
    H = generate_closure(G, [g % G.order for g in raw])
    H.check()
    assert G.order % H.order == 0
    assert oracles.is_subgroup(G.rows, H.members)


def test_subgroup_from_members_rejects_non_subgroup():
    G = build(D8)
    with pytest.raises(ContractViolation):
        subgroup_from_members(G, [0, 1])  # x alone has order 4


def test_normalizer_and_centralizer_examples():
    G = build(D8)
    refl = generate_closure(G, [idx(D8, 0, 1)])
    assert normalizer(G, refl).order == 4
    assert centralizer(G, G.trivial) == G.whole
    Q = build(Q8)
    X = generate_closure(Q, [idx(Q8, 1, 0)])
    assert centralizer(Q, X) == X
    assert normalizer(Q, X) == Q.whole
    A = build(MetacyclicParams(2, 2, 1, 0))
    H = generate_closure(A, [5])
    assert normalizer(A, H) == A.whole and centralizer(A, H) == A.whole


@given(st.sampled_from(TINY), st.integers(0, 10**6))
def test_normalizer_against_brute_force(p, seed):
    G = build(p)
    H = generate_closure(G, [seed % G.order])
    rows = G.rows
    expected = [g for g in range(G.order)
                if {rows[rows[g][h]][oracles.inverse_of(rows, g)] for h in H.members} == H.member_set]
    assert list(normalizer(G, H).members) == expected


def test_frattini_omega_derived_examples():
    V = build(MetacyclicParams(1, 1, 1, 0))
    assert frattini(V).order == 1
    Q = build(Q8)
    assert omega(Q).members == (0, idx(Q8, 2, 0))
    D16 = build(standard_family("dihedral", 16))
    Dp = derived_subgroup(D16)
    assert Dp.order == 4 and D16.order // Dp.order == 4
    assert Dp.member_set == oracles.commutator_closure(D16.rows)


def test_frattini_shortcut_refused_for_non_2_group():
    s3 = [[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
          [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]]
    G = GroupTable(s3)
    with pytest.raises(ContractViolation):
        frattini(G)
    assert frattini(G, method="maximal").order == 1


@pytest.mark.parametrize("p", SMALL, ids=str)
def test_frattini_dual_computation(p):
    G = build(p)
    squares = frattini(G, "squares")
    assert squares == frattini(G, "maximal")
    if p.order <= 32:
        assert squares.member_set == oracles.frattini_by_maximals(G.rows)


@pytest.mark.parametrize("p", SMALL, ids=str)
def test_subgroup_methods_agree(p):
    G = build(p)
    pairs = all_subgroups(G, method="pairs")
    assert pairs == all_subgroups(G, method="fixpoint")
    assert len({H.members for H in pairs}) == len(pairs)
    if p.order <= 16:
        assert {H.member_set for H in pairs} == oracles.all_subgroups_fixpoint(G.rows)


def test_subgroup_counts():
    assert len(all_subgroups(build(C4))) == 3
    assert len(all_subgroups(build(Q8))) == 6
    assert len(all_subgroups(build(D8))) == 10


@given(st.sampled_from(SMALL))
def test_class_equation(p):
    G = build(p)
    classes = conjugacy_classes(G)
    assert sum(classes.sizes) == G.order
    assert all(G.order % s == 0 for s in classes.sizes)


def test_class_counts():
    assert len(conjugacy_classes(build(D8))) == 5
    assert len(conjugacy_classes(build(M16))) == 10 == len(oracles.conjugacy_classes(build(M16).rows))
    A = build(MetacyclicParams(2, 2, 1, 0))
    assert conjugacy_classes(A).sizes == [1] * 16


def test_nilpotency_class_examples():
    assert nilpotency_class(build(MetacyclicParams(2, 2, 1, 0))) == 1
    assert nilpotency_class(build(Q8)) == 2
    assert nilpotency_class(build(standard_family("dihedral", 16))) == 3


def test_lower_central_series_refuses_non_nilpotent():
    s3 = GroupTable([[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
                     [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]])
    with pytest.raises(ContractViolation):
        lower_central_series(s3)


def test_quotient_examples():
    G = build(D8)
    assert quotient(G, G.whole).order == 1
    same = quotient(G, G.trivial)
    assert same.order == 8 and nilpotency_class(same) == 2
    V = quotient(G, center(G))
    assert V.order == 4 and V.exponent == 2
    with pytest.raises(ContractViolation):
        quotient(G, generate_closure(G, [idx(D8, 0, 1)]))


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_quotient_order(p, seed):
    G = build(p)
    normals = [H for H in all_subgroups(G) if is_normal(G, H)]
    N = normals[seed % len(normals)]
    assert quotient(G, N).order == G.order // N.order


def test_orders_and_invariant_factors():
    C8 = build(MetacyclicParams(3, 0, 1, 0))
    assert invariant_factors(C8) == [8] and exponent(C8) == 8
    assert element_order(C8, 1) == 8
    C44 = build(MetacyclicParams(2, 2, 1, 0))
    assert invariant_factors(C44) == [4, 4] and is_homocyclic(C44)
    C28 = build(MetacyclicParams(3, 1, 1, 0))
    assert invariant_factors(C28) == [8, 2] and not is_homocyclic(C28)
    with pytest.raises(ContractViolation):
        invariant_factors(build(D8))


@pytest.mark.parametrize("p", [p for p in SMALL if p.r == 1], ids=str)
def test_invariant_factors_product(p):
    G = build(p)
    f = invariant_factors(G)
    assert np.prod(f) == G.order
    assert all(a % b == 0 for a, b in zip(f, f[1:]))
    assert f[0] == oracles.lcm(*(oracles.order_of(G.rows, g) for g in range(G.order)))
