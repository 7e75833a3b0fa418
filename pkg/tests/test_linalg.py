from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tdlc_entropy.linalg import (
    charpoly,
    det,
    frac_matrix,
    integer_kernel,
    mat_mul,
    mat_vec,
    pval,
    rational_kernel,
    rref,
    solve_right,
    zp_column_hnf,
)

F = Fraction


def test_rref_canonical():
    red, piv = rref([[2, 4], [1, 2]])
    assert red == ((F(1), F(2)),)
    assert piv == (0,)


def test_rational_kernel_matches_definition():
    a = frac_matrix([[1, 2, 3], [0, 1, 1]])
    for v in rational_kernel(a):
        assert all(x == 0 for x in mat_vec(a, v))
    assert len(rational_kernel(a)) == 1


def test_solve_right():
    a = [[1, 1], [0, 1]]
    x = solve_right(a, [3, 2])
    assert x == (F(1), F(2))
    assert solve_right([[1, 0], [1, 0]], [1, 2]) is None


def test_det_and_charpoly():
    assert det([[F(1, 2), 1], [0, F(1, 2)]]) == F(1, 4)
    # det(xI - A) for the shear [[1/2, 1], [0, 1/2]] is (x - 1/2)^2.
    assert charpoly([[F(1, 2), 1], [0, F(1, 2)]]) == (F(1, 4), F(-1), F(1))
    assert charpoly([[2, 0], [0, F(1, 2)]]) == (F(1), F(-5, 2), F(1))


def test_integer_kernel_exact_and_saturated():
    basis = integer_kernel([[1, 2, 3]])
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    # (1, 1, -1) is in the kernel and must be an integer combination of the basis.
    sol = solve_right([[b[i] for b in basis] for i in range(3)], [1, 1, -1])
    assert sol is not None and all(x.denominator == 1 for x in sol)


def test_pval():
    assert pval(12, 2) == 2
    assert pval(F(1, 2), 2) == -1
    assert pval(F(3, 4), 2) == -2
    assert pval(0, 2) is None
    assert pval(F(3, 5), 2) == 0


def test_zp_hnf_examples():
    # 4 Z_2 inside Q_2: single column (4) -> pivot exponent 2.
    cols, piv = zp_column_hnf([(4,)], 1, 2)
    assert cols == ((F(4),),) and piv == ((0, 2),)
    # Prime-to-p content is a unit and disappears: span{3} = Z_(2).
    cols, piv = zp_column_hnf([(3,)], 1, 2)
    assert cols == ((F(1),),) and piv == ((0, 0),)
    # Redundant generators collapse.
    cols, piv = zp_column_hnf([(2, 0), (0, 1), (2, 1)], 2, 2)
    assert piv == ((0, 1), (1, 0))
    assert cols == ((F(2), F(0)), (F(0), F(1)))


def _random_unimodular_ops(cols, d, p, rnd):
    cols = [list(c) for c in cols]
    n = len(cols)
    for _ in range(6):
        op = rnd.draw(st.integers(0, 2))
        i = rnd.draw(st.integers(0, n - 1))
        j = rnd.draw(st.integers(0, n - 1))
        if op == 0 and i != j:
            # add a Z_(p) multiple of column j to column i
            num = rnd.draw(st.integers(-6, 6))
            den = rnd.draw(st.sampled_from([1, 3, 5, 7]))  # prime to p=2
            r = F(num, den)
            cols[i] = [a + r * b for a, b in zip(cols[i], cols[j])]
        elif op == 1:
            # scale by a unit of Z_(2)
            u = F(rnd.draw(st.sampled_from([1, -1, 3, 5])), rnd.draw(st.sampled_from([1, 3, 7])))
            cols[i] = [u * a for a in cols[i]]
        else:
            cols[i], cols[j] = cols[j], cols[i]
    return cols


@settings(max_examples=60)
@given(st.data())
def test_zp_hnf_canonical_under_unimodular_column_ops(data):
    d = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 3))
    cols = [
        tuple(
            F(data.draw(st.integers(-8, 8)), 2 ** data.draw(st.integers(0, 2)))
            for _ in range(d)
        )
        for _ in range(n)
    ]
    base = zp_column_hnf(cols, d, 2)
    alt = _random_unimodular_ops(cols, d, 2, data)
    assert zp_column_hnf(alt, d, 2) == base


def test_mat_mul_assoc_spot():
    a = frac_matrix([[1, 2], [3, 4]])
    b = frac_matrix([[0, 1], [1, 0]])
    c = frac_matrix([[F(1, 2), 0], [0, 2]])
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
