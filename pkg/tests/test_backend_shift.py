import pytest

from tdlc_entropy.backends.shift import ShiftProfileModel, cyclic_alphabet, matrix_hom
from tdlc_entropy.core import UnsupportedSubgroupError
from tdlc_entropy.exact import INFINITE_INDEX, IndexValue


@pytest.fixture
def z2_model():
    return ShiftProfileModel(cyclic_alphabet([2]), "compact")


@pytest.fixture
def z4_model():
    return ShiftProfileModel(cyclic_alphabet([4]), "compact")


@pytest.fixture
def laurent_z3():
    return ShiftProfileModel(cyclic_alphabet([3]), "laurent")


def window_count_oracle(model, U, V, lo, hi):
    """[U:V] restricted to a window, by counting configurations per coordinate."""
    total = 1
    for i in range(lo, hi):
        total *= model.alphabet.order_of(U.value_at(i)) // model.alphabet.order_of(V.value_at(i))
    return total


def test_alphabet_lattices():
    z2 = cyclic_alphabet([2])
    assert len(z2.subgroup_sets) == 2
    z4 = cyclic_alphabet([4])
    assert len(z4.subgroup_sets) == 3
    klein = cyclic_alphabet([2, 2])
    assert len(klein.subgroup_sets) == 5


def test_profile_canonicalization(z2_model):
    m = z2_model
    full = m.alphabet.full_id
    triv = m.alphabet.trivial_id
    # redundant window entries equal to the tails get trimmed
    p = m.make_profile((full,), -2, (full, triv, full), (full,))
    assert p.start == -1 and p.window == (triv,)
    # equal tails with empty window collapse to the constant profile
    q = m.make_profile((full,), 7, (), (full,))
    assert q == m.full_group()
    # patterns reduce to their minimal period
    r = m.make_profile((full, full), 0, (triv,), (full, full))
    assert r.left == (full,) and r.right == (full,)


def test_spec_intersection_example(z2_model):
    m = z2_model
    u0 = m.base_element(0)  # trivial at 0
    u1 = m.translate(u0, 1)  # trivial at 1
    meet = m.intersect(u0, u1)
    triv = m.alphabet.trivial_id
    assert meet == m.make_profile((m.alphabet.full_id,), 0, (triv, triv), (m.alphabet.full_id,))
    assert m.index(meet, m.full_group()) == IndexValue(4)


def test_image_preimage_shift(z2_model):
    m = z2_model
    phi = m.endo(1)  # left shift
    u0 = m.base_element(0)
    img = m.image(phi, u0)
    assert img == m.translate(u0, -1)  # trivial at -1
    pre = m.preimage(phi, u0)
    assert pre == m.translate(u0, 1)  # trivial at +1
    ident = m.identity_endo()
    assert m.image(ident, u0) == u0


def test_index_profiles(z4_model):
    m = z4_model
    full = m.full_group()
    u = m.base_element(0)
    assert m.index(u, full) == IndexValue(4)
    assert m.index(u, u) == IndexValue(1)
    two = m.alphabet.subgroup_id({(0,), (2,)})
    mixed = m.make_profile((m.alphabet.full_id,), 0, (two,), (m.alphabet.full_id,))
    assert m.index(u, mixed) == IndexValue(2)
    assert m.index(u, full) == IndexValue(window_count_oracle(m, full, u, -1, 1))


def test_index_infinite_on_tail_mismatch(z2_model):
    m = z2_model
    step = m.make_profile((m.alphabet.trivial_id,), 0, (), (m.alphabet.full_id,))
    assert m.index(step, m.full_group()) == INFINITE_INDEX


def test_spec_profile_sum_example(z2_model):
    # (trivial <= 0, full >= 1) + (full < 0, trivial >= 0) = trivial exactly at 0
    m = z2_model
    full, triv = m.alphabet.full_id, m.alphabet.trivial_id
    a = m.make_profile((triv,), 1, (), (full,))
    b = m.make_profile((full,), 0, (), (triv,))
    s = m.set_product(a, b)
    assert s == m.base_element(0)


def test_base_family(z2_model, laurent_z3):
    m = z2_model
    b1 = m.base_element(1)
    assert [b1.value_at(i) for i in range(-2, 3)] == [
        m.alphabet.full_id,
        m.alphabet.trivial_id,
        m.alphabet.trivial_id,
        m.alphabet.trivial_id,
        m.alphabet.full_id,
    ]
    assert m.contains(m.base_element(0), b1)
    lb = laurent_z3.base_element(0)  # F[[t]]
    assert lb.is_compact and lb.is_open
    assert laurent_z3.contains(lb, laurent_z3.base_element(1))
    assert not laurent_z3.full_group().is_compact


def test_plus_group_compact_shift(z2_model):
    m = z2_model
    phi = m.endo(1)
    u = m.base_element(0)
    handle, method, steps, cert = m.plus_group_impl(phi, u, 64)
    # trivial for i <= 0, full for i >= 1
    expected = m.make_profile((m.alphabet.trivial_id,), 1, (), (m.alphabet.full_id,))
    assert handle == expected
    assert method == "structural"


def test_minus_group_compact_shift(z2_model):
    m = z2_model
    phi = m.endo(1)
    u = m.base_element(0)
    handle, cert = m.minus_group_impl(phi, u, 64)
    # full for i < 0, trivial for i >= 0
    expected = m.make_profile((m.alphabet.full_id,), 0, (), (m.alphabet.trivial_id,))
    assert handle == expected


def test_minus_n_window_growth(z2_model):
    m = z2_model
    phi = m.endo(1)
    u = m.base_element(0)
    current = u
    for n in range(1, 4):
        current = m.intersect(current, m.preimage(m.endo_power(phi, n), u))
    triv, full = m.alphabet.trivial_id, m.alphabet.full_id
    assert current == m.make_profile((full,), 0, (triv,) * 4, (full,))


def test_plus_group_laurent(laurent_z3):
    m = laurent_z3
    phi = m.endo(1)  # multiplication by t^{-1}
    u = m.base_element(0)
    handle, method, steps, cert = m.plus_group_impl(phi, u, 64)
    assert handle == u  # F[[t]] is its own forward core
    hminus, _ = m.minus_group_impl(phi, u, 64)
    assert hminus == m.trivial_subgroup()
    assert m.set_product(handle, hminus) == u  # tidy above


def test_plus_plus_not_closed_compact(z2_model):
    m = z2_model
    phi = m.endo(1)
    u_plus = m.make_profile((m.alphabet.trivial_id,), 1, (), (m.alphabet.full_id,))
    res = m.plus_plus_analysis(phi, u_plus, 12)
    assert res["closed"] is False
    assert res["handle"] == m.full_group()
    assert all(ix == IndexValue(2) for ix in res["indices"])


def test_plus_plus_closed_laurent(laurent_z3):
    m = laurent_z3
    phi = m.endo(1)
    u_plus = m.base_element(0)
    res = m.plus_plus_analysis(phi, u_plus, 12)
    assert res["closed"] is True
    assert res["handle"] == m.full_group()
    assert all(ix == IndexValue(3) for ix in res["indices"])


def test_quotient_and_restriction_z4():
    m = ShiftProfileModel(cyclic_alphabet([4]), "compact")
    phi = m.endo(1)
    two = m.alphabet.subgroup_id({(0,), (2,)})
    h = m.constant_profile(two)  # (2Z/4)^Z
    q = m.quotient(phi, h)
    assert len(q.system.model.alphabet.elements) == 2
    assert q.project(m.full_group()) == q.system.model.full_group()
    r = m.restriction(phi, h)
    assert len(r.system.model.alphabet.elements) == 2
    assert r.embed(r.system.model.full_group()) == h
    with pytest.raises(UnsupportedSubgroupError):
        m.quotient(phi, m.base_element(0))


def test_subgroup_flags_shift(z2_model):
    m = z2_model
    phi = m.endo(1)
    g = m.full_group()
    flags = m.subgroup_flags(phi, g)
    assert flags["phi_stable"] and flags["contains_kernel"] and flags["compact"]
    u0 = m.base_element(0)
    assert not m.subgroup_flags(phi, u0)["phi_invariant"]


def test_sigma_with_kernel():
    m = ShiftProfileModel(cyclic_alphabet([4]), "compact")
    sigma = matrix_hom(m.alphabet, (4,), [[2]])  # x -> 2x on Z/4
    phi = m.endo(1, sigma)
    assert not phi.kernel_trivial
    ker = m.kernel_handle(phi)
    two = m.alphabet.subgroup_id({(0,), (2,)})
    assert ker == m.constant_profile(two)


def test_brute_force_window_oracle(z4_model):
    """Re-verify an intersection and a product against raw enumeration on a window."""
    m = z4_model
    full, triv = m.alphabet.full_id, m.alphabet.trivial_id
    two = m.alphabet.subgroup_id({(0,), (2,)})
    a = m.make_profile((full,), 0, (two, triv), (full,))
    b = m.make_profile((full,), -1, (two, two, full, two), (full,))
    got_meet = m.intersect(a, b)
    got_join = m.set_product(a, b)
    for i in range(-3, 5):
        sa = m.alphabet.subgroup_sets[a.value_at(i)]
        sb = m.alphabet.subgroup_sets[b.value_at(i)]
        assert m.alphabet.subgroup_sets[got_meet.value_at(i)] == sa & sb
        joined = {m.alphabet.add(x, y) for x in sa for y in sb}
        assert m.alphabet.subgroup_sets[got_join.value_at(i)] == joined
