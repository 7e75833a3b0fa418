import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tdlc_entropy.backends.padic import PadicModel
from tdlc_entropy.core import UnsupportedSubgroupError
from tdlc_entropy.exact import INFINITE_INDEX, IndexValue

F = Fraction


@pytest.fixture
def q2():
    return PadicModel(2, 1)


@pytest.fixture
def q2_2():
    return PadicModel(2, 2)


def brute_force_lattice_index(sub_scale, sup_scale):
    """[p^a Z_p : p^b Z_p] by counting residues, p = 2, b >= a."""
    return 2 ** (sub_scale - sup_scale)


def test_lattice_canonical_form(q2):
    a = q2.lattice([[4]])
    b = q2.lattice([[12]])  # 12 = 4 * 3, and 3 is a 2-adic unit
    assert a == b
    assert a != q2.lattice([[2]])


def test_intersect_containment_case(q2):
    z2 = q2.full_lattice()
    four = q2.lattice([[4]])
    assert q2.intersect(z2, four) == four


def test_index_examples(q2):
    z2 = q2.full_lattice()
    four = q2.lattice([[4]])
    assert q2.index(four, z2) == IndexValue(4)
    assert q2.index(four, z2) == IndexValue(brute_force_lattice_index(2, 0))
    assert q2.index(z2, z2) == IndexValue(1)
    with pytest.raises(ValueError):
        q2.index(z2, four)


def test_index_det_valuation_oracle(q2_2):
    # Smith elementary divisors of [[2,0],[1,4]] over Z_(2): index = 2^v(det) = 8
    lat = q2_2.lattice([[2, 1], [0, 4]])
    assert q2_2.index(lat, q2_2.full_lattice()) == IndexValue(8)


def test_infinite_index_for_lower_rank(q2_2):
    line = q2_2.lattice([[1, 0]])
    assert q2_2.index(line, q2_2.full_lattice()) == INFINITE_INDEX


def test_image_preimage_halving(q2):
    half = q2.endo([[F(1, 2)]])
    z2 = q2.full_lattice()
    assert q2.image(half, z2) == q2.lattice([[F(1, 2)]])
    assert q2.preimage(half, z2) == q2.lattice([[2]])
    ident = q2.identity_endo()
    assert q2.image(ident, z2) == z2
    assert q2.preimage(ident, z2) == z2


def test_preimage_of_singular_map_is_noncompact(q2_2):
    proj = q2_2.endo([[1, 0], [0, 0]])
    pre = q2_2.preimage(proj, q2_2.full_lattice())
    # {(x, y) : x integral} = Z_2 x Q_2
    assert not pre.is_compact
    assert pre.is_open
    assert q2_2.member(pre, (F(1), F(1, 64)))
    assert not q2_2.member(pre, (F(1, 2), F(0)))


def test_base_family_scaling(q2):
    assert q2.base_element(3) == q2.lattice([[8]])
    assert q2.contains(q2.base_element(1), q2.base_element(2))


def test_set_product_containment(q2):
    two = q2.lattice([[2]])
    z2 = q2.full_lattice()
    assert q2.set_product(two, z2) == z2


def test_member_and_contains(q2_2):
    lat = q2_2.lattice([[2, 0], [0, 1]])
    assert q2_2.member(lat, (F(2), F(5)))
    assert not q2_2.member(lat, (F(1), F(0)))
    assert q2_2.contains(q2_2.full_lattice(), lat)
    assert not q2_2.contains(lat, q2_2.full_lattice())


def test_whole_space_and_zero(q2_2):
    whole = q2_2.whole_space()
    zero = q2_2.zero_subgroup()
    assert whole.is_open and not whole.is_compact
    assert zero.is_compact and not zero.is_open
    assert q2_2.intersect(whole, q2_2.full_lattice()) == q2_2.full_lattice()
    assert q2_2.intersect(zero, q2_2.full_lattice()) == zero


def test_constraint_roundtrip_mixed(q2_2):
    # V + L with V the y-axis and L = 4Z_2 on the x-axis
    h = q2_2.closed_subgroup([[0, 1]], [[4, 0]])
    n, d = q2_2.constraint_form(h)
    assert q2_2.from_constraints(n, d) == h


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_constraint_roundtrip_random(data):
    dim = data.draw(st.integers(1, 3))
    model = PadicModel(2, dim)
    n_sub = data.draw(st.integers(0, dim - 1)) if dim > 1 else 0
    n_mod = data.draw(st.integers(0, dim - n_sub))
    rnd = lambda: F(data.draw(st.integers(-4, 4)), 2 ** data.draw(st.integers(0, 2)))
    sub = [[rnd() for _ in range(dim)] for _ in range(n_sub)]
    mod = [[rnd() for _ in range(dim)] for _ in range(n_mod)]
    h = model.closed_subgroup(sub, mod)
    n, d = model.constraint_form(h)
    assert model.from_constraints(n, d) == h


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_intersect_agrees_with_membership(data):
    model = PadicModel(2, 2)
    rnd = lambda: F(data.draw(st.integers(-4, 4)), 2 ** data.draw(st.integers(0, 1)))
    u = model.lattice([[rnd(), rnd()], [rnd(), rnd()]])
    v = model.lattice([[rnd(), rnd()], [rnd(), rnd()]])
    w = model.intersect(u, v)
    assert model.contains(u, w) and model.contains(v, w)
    # spot membership: dyadic sample points agree
    for x in itertools.product([F(0), F(1), F(2), F(1, 2)], repeat=2):
        assert (model.member(u, x) and model.member(v, x)) == model.member(w, x)


def test_quotient_of_diag_by_axis():
    model = PadicModel(2, 2)
    phi = model.endo([[F(1, 2), 0], [0, F(1, 2)]])
    h = model.closed_subgroup([[1, 0]], [])
    q = model.quotient(phi, h)
    assert q.system.model.dim == 1
    assert q.system.endo.matrix == ((F(1, 2),),)
    assert q.project(model.full_lattice()) == q.system.model.full_lattice()


def test_quotient_by_compact_module_unsupported():
    model = PadicModel(2, 1)
    with pytest.raises(UnsupportedSubgroupError):
        model.quotient(model.identity_endo(), model.full_lattice())


def test_restriction_to_axis():
    model = PadicModel(2, 2)
    phi = model.endo([[F(1, 2), 0], [0, 2]])
    h = model.closed_subgroup([[1, 0]], [])
    r = model.restriction(phi, h)
    assert r.system.model.dim == 1
    assert r.system.endo.matrix == ((F(1, 2),),)
    inside = r.restrict_handle(model.full_lattice())
    assert inside == r.system.model.full_lattice()
    assert r.embed(inside) == model.lattice([[1, 0]])


def test_newton_polygon_examples():
    q2 = PadicModel(2, 1)
    assert q2.newton_polygon(q2.endo([[F(1, 2)]])) == ((F(-1), 1),)
    assert q2.entropy_exponent(q2.endo([[F(1, 2)]])) == 1

    m = PadicModel(2, 2)
    mixed = m.endo([[2, 0], [0, F(1, 2)]])
    assert m.newton_polygon(mixed) == ((F(-1), 1), (F(1), 1))
    assert m.entropy_exponent(mixed) == 1

    ident = m.identity_endo()
    assert m.newton_polygon(ident) == ((F(0), 2),)
    assert m.entropy_exponent(ident) == 0

    jordan = m.endo([[F(1, 2), 1], [0, F(1, 2)]])
    assert m.entropy_exponent(jordan) == 2

    singular = m.endo([[F(1, 2), 0], [0, 0]])
    assert m.newton_polygon(singular) == ((F(-1), 1), (None, 1))
    assert m.entropy_exponent(singular) == 1


def test_plus_group_fixpoint_and_structural():
    q2 = PadicModel(2, 1)
    half = q2.endo([[F(1, 2)]])
    u = q2.full_lattice()
    handle, method, steps, cert = q2.plus_group_impl(half, u, 64)
    assert handle == u and method == "fixpoint"

    double = q2.endo([[2]])
    handle, method, steps, cert = q2.plus_group_impl(double, u, 8)
    assert handle == q2.zero_subgroup() and method == "structural"

    m = PadicModel(2, 2)
    mixed = m.endo([[2, 0], [0, F(1, 2)]])
    handle, method, steps, cert = m.plus_group_impl(mixed, m.full_lattice(), 8)
    assert handle == m.lattice([[0, 1]])
    assert method == "structural"


def test_minus_group_examples():
    q2 = PadicModel(2, 1)
    half = q2.endo([[F(1, 2)]])
    handle, cert = q2.minus_group_impl(half, q2.full_lattice(), 8)
    assert handle == q2.zero_subgroup()

    ident = q2.identity_endo()
    handle, cert = q2.minus_group_impl(ident, q2.full_lattice(), 8)
    assert handle == q2.full_lattice()

    m = PadicModel(2, 2)
    mixed = m.endo([[2, 0], [0, F(1, 2)]])
    handle, cert = m.minus_group_impl(mixed, m.full_lattice(), 8)
    assert handle == m.lattice([[1, 0]])


def test_plus_plus_analysis_expanding():
    q2 = PadicModel(2, 1)
    half = q2.endo([[F(1, 2)]])
    res = q2.plus_plus_analysis(half, q2.full_lattice(), 8)
    assert res["closed"] is True
    assert res["handle"] == q2.whole_space()
    assert all(ix == IndexValue(2) for ix in res["indices"])

    ident = q2.identity_endo()
    res = q2.plus_plus_analysis(ident, q2.full_lattice(), 8)
    assert res["closed"] is True and res["handle"] == q2.full_lattice()


def test_plus_plus_mixed_unit_directions():
    m = PadicModel(2, 2)
    phi = m.endo([[1, 0], [0, F(1, 2)]])
    u_plus, *_ = m.plus_group_impl(phi, m.full_lattice(), 8)
    assert u_plus == m.full_lattice()
    res = m.plus_plus_analysis(phi, u_plus, 8)
    assert res["closed"] is True
    # Z_2 x Q_2: frozen unit axis plus a filled expanding axis
    assert res["handle"] == m.closed_subgroup([[0, 1]], [[1, 0]])


def test_scale_candidates_adapted():
    m = PadicModel(2, 2)
    mixed = m.endo([[2, 0], [0, F(1, 2)]])
    cands = m.scale_candidates(mixed, 4)
    assert m.full_lattice() in cands
