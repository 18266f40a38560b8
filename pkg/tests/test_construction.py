import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from gradedring.algebra import (
    check_filter,
    check_strong,
    check_unital,
    is_identity_of,
    local_units,
)
from gradedring.construction import (
    Inconclusive,
    NonfreeCertificate,
    SelectionSpec,
    build_das,
    category_algebra,
    das_identity,
    monoid_category,
    monoid_counterexample,
    nonfree_check,
    nonfree_example,
    nonfree_selection,
    position_sets,
)
from gradedring.errors import IdentityMorphism, InvalidSelection
from gradedring.fixtures import (
    TWO_OBJECT_SELECTION,
    chain_category,
    cyclic_group,
    four_morphism_groupoid,
    klein_four,
    random_groupoid,
    random_selection,
    random_transformation_monoid,
    trivial_group,
    two_object_groupoid,
    z4,
)
from gradedring.groupoid import is_cancellative

seeds = st.integers(min_value=0, max_value=10**6)

Z4_COMPONENTS = {
    "0": "e11 e22 e33 e44 e45 e54 e55",
    "1": "e12 e23 e34 e35 e41 e51",
    "2": "e13 e24 e25 e31 e42 e52",
    "3": "e14 e15 e21 e32 e43 e53",
}

TWO_OBJECT_COMPONENTS = {
    "e": "e55 e66 e77 e88 e89 e98 e99",
    "alpha": "e56 e65 e78 e79 e87 e97",
    "t0": "e15 e26 e38 e39 e47",
    "t1": "e16 e25 e37 e48 e49",
    "f": "e11 e22 e33 e44",
    "beta": "e12 e21 e34 e43",
    "u0": "e51 e62 e74 e83 e93",
    "u1": "e52 e61 e73 e84 e94",
}


def supports(ga):
    return {ga.cat.name(s): " ".join(ga.alg.format(v) for v in c.basis()) for s, c in enumerate(ga.components)}


def test_z4_components(z4ga):
    assert z4ga.dims() == [7, 6, 6, 6]
    assert supports(z4ga) == Z4_COMPONENTS


def test_two_object_components(twoga):
    assert supports(twoga) == TWO_OBJECT_COMPONENTS
    assert twoga.dims() == [7, 6, 5, 5, 4, 4, 5, 5]


def test_trivial_group_selection():
    ga, _ = build_das(SelectionSpec.of(trivial_group(), ["e"]))
    assert ga.dims() == [1] and ga.total.dim == 1


def test_invalid_selection():
    with pytest.raises(InvalidSelection):
        SelectionSpec.of(z4(), ["7"])
    with pytest.raises(InvalidSelection):
        SelectionSpec(z4(), ())


def test_position_sets_brute_force():
    # oracle: X_s read straight off the matrix supports the builder produced
    g = two_object_groupoid()
    spec = SelectionSpec.of(g, TWO_OBJECT_SELECTION)
    pos = position_sets(spec)
    for s, names in TWO_OBJECT_COMPONENTS.items():
        expected = {(int(t[1]), int(t[2])) for t in names.split()}
        assert pos[g.morphism_id(s)] == expected


# the category algebra


def test_group_algebra_of_z4():
    ga = category_algebra(z4())
    assert ga.alg.dim == 4 and ga.dims() == [1, 1, 1, 1]
    assert check_strong(ga)


def test_category_algebra_of_four_morphism_groupoid():
    ga = category_algebra(four_morphism_groupoid())
    assert check_strong(ga)
    assert ga.alg.format(check_unital(ga)) == "u_e+u_f"
    units = local_units(ga)
    assert [ga.alg.format(units[e]) for e in (0, 1)] == ["u_e", "u_f"]


def test_category_algebra_of_monoid():
    # u_e u_s = u_s and u_s u_s = u_s, so every component product is as large as it can be
    ga = category_algebra(monoid_category())
    assert check_filter(ga)
    assert check_strong(ga)


def test_counterexample_fixture():
    ga = monoid_counterexample()
    assert supports(ga) == {"e": "e33", "s": "e11 e12 e21 e22"}


# nonfreeness


def test_four_morphism_nonfree():
    g = four_morphism_groupoid()
    t = g.morphism_id("t")
    assert [g.name(s) for s in nonfree_selection(g, t)] == ["t", "f", "t_inv", "e", "e"]
    ga, cert = nonfree_example(g, t)
    assert (cert.m, cert.dim_unit, cert.dim_t) == (2, 5, 3)


def test_z4_loop_nonfree():
    ga, cert = nonfree_example(z4(), "1")
    assert (cert.dim_unit, cert.dim_t) == (7, 6)
    assert cert.m == 4


def test_identity_rejected():
    with pytest.raises(IdentityMorphism):
        nonfree_example(z4(), "0")


def test_nonfree_check_on_z4_grading(z4ga):
    cert = nonfree_check(z4ga, "1")
    assert isinstance(cert, NonfreeCertificate) and cert.holds


def test_group_algebra_inconclusive():
    res = nonfree_check(category_algebra(z4()), "1")
    assert isinstance(res, Inconclusive)


def test_nonfree_dims_by_pair_count():
    # oracle: count (i, j) with s_i t = s_j directly from the selection
    g = two_object_groupoid()
    for t in g.ids():
        if g.is_identity(t):
            continue
        sel = nonfree_selection(g, t)
        count = sum(1 for a in sel for b in sel if g.compose(a, t) == b)
        unit = g.identity[g.cod(t)]
        count_unit = sum(1 for a in sel for b in sel if g.compose(a, unit) == b)
        _, cert = nonfree_example(g, t)
        assert (cert.dim_t, cert.dim_unit) == (count, count_unit)


@given(seeds)
def test_nonfree_certificate_always_issued(seed):
    g = random_groupoid(random.Random(seed), max_morphisms=10)
    for t in g.ids():
        if g.is_identity(t):
            continue
        ga, cert = nonfree_example(g, t)
        loop = g.dom(t) == g.cod(t)
        assert cert.dim_unit == cert.m + 3
        assert cert.dim_t == cert.m + (2 if loop else 1)
        assert all(d > 0 for d in ga.dims())


# the builder's guarantees on arbitrary selections


def _random_category(rng):
    pick = rng.random()
    if pick < 0.5:
        return random_groupoid(rng, max_morphisms=8)
    if pick < 0.8:
        return random_transformation_monoid(rng, max_size=8)
    return rng.choice([chain_category(3), monoid_category(), klein_four(), cyclic_group(3)])


@given(seeds)
def test_builder_guarantees(seed):
    rng = random.Random(seed)
    cat = _random_category(rng)
    spec = SelectionSpec(cat, tuple(random_selection(rng, cat, 6)))
    ga, pos = build_das(spec)
    assert check_filter(ga)
    if spec.product_closed():
        assert check_strong(ga)
    if spec.covers_category():
        assert all(not c.is_zero() for c in ga.components)
    if spec.covers_domains():
        one = das_identity(spec)
        mats = [ga.alg.to_matrix(v) for v in ga.total.basis()]
        i_mat = ga.alg.to_matrix(one)
        assert all(oracles.mat_mul(i_mat, m) == m == oracles.mat_mul(m, i_mat) for m in mats)
        assert is_identity_of(ga.alg, one, ga.total)
    if is_cancellative(cat):
        sets = list(pos.values())
        assert sum(len(x) for x in sets) == len(set().union(*sets))
        assert ga.is_direct
