"""Integer/rational linear algebra: normal forms, duals, quotients."""

import random
from fractions import Fraction

import pytest

from multifan.errors import NonGenericPlane, SingularInput
from multifan.lattices import (
    annihilator_basis,
    determinant,
    dot,
    dual_basis,
    hermite_normal_form,
    integral_solution,
    kernel_basis,
    matrix_inverse,
    plane_line_intersection,
    primitive_vector,
    quotient_group,
    rank,
    smith_normal_form,
    solve_in_span,
    xgcd,
)


def _matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _random_matrix(rng, m, n, lo=-9, hi=9):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(m))


def test_xgcd_bezout():
    rng = random.Random(5)
    for _ in range(200):
        a, b = rng.randint(-50, 50), rng.randint(-50, 50)
        g, s, t = xgcd(a, b)
        assert g == abs(__import__("math").gcd(a, b))
        assert s * a + t * b == g


def test_hnf_frozen_example():
    H, U = hermite_normal_form([(1, 0), (-1, -2)])
    assert H == ((1, 0), (0, 2))
    assert _matmul(U, ((1, 0), (-1, -2))) == H
    assert abs(determinant(U)) == 1


def test_hnf_properties_random():
    rng = random.Random(11)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = _random_matrix(rng, m, n)
        H, U = hermite_normal_form(A)
        assert abs(determinant(U)) == 1
        assert _matmul(U, A) == H
        # staircase shape with positive pivots and reduced columns
        last = -1
        for row in H:
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            piv = nz[0]
            assert piv > last
            last = piv
            assert row[piv] > 0
        for i, row in enumerate(H):
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            piv = nz[0]
            for above in H[:i]:
                assert 0 <= above[piv] < row[piv]


def test_snf_frozen_examples():
    D, P, Q = smith_normal_form([(2, 0), (0, 3)])
    assert (D[0][0], D[1][1]) == (1, 6)
    D, P, Q = smith_normal_form([(1, 0), (-1, -2)])
    assert (D[0][0], D[1][1]) == (1, 2)
    assert _matmul(_matmul(P, ((1, 0), (-1, -2))), Q) == D


def test_snf_properties_random():
    rng = random.Random(23)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = _random_matrix(rng, m, n)
        D, P, Q = smith_normal_form(A)
        assert abs(determinant(P)) == 1
        assert abs(determinant(Q)) == 1
        assert _matmul(_matmul(P, A), Q) == D
        diag = [D[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0


def test_dual_basis_frozen_example():
    u = dual_basis([(1, 0), (-1, -2)])
    assert u == ((Fraction(1), Fraction(-1, 2)), (Fraction(0), Fraction(-1, 2)))
    for i, ui in enumerate(u):
        for j, vj in enumerate([(1, 0), (-1, -2)]):
            assert dot(ui, vj) == (1 if i == j else 0)


def test_dual_basis_singular():
    with pytest.raises(SingularInput):
        dual_basis([(1, 2), (2, 4)])


def test_dual_basis_random():
    rng = random.Random(37)
    done = 0
    while done < 40:
        n = rng.randint(1, 4)
        V = _random_matrix(rng, n, n, -6, 6)
        if determinant(V) == 0:
            continue
        done += 1
        U = dual_basis(V)
        for i in range(n):
            for j in range(n):
                assert dot(U[i], V[j]) == (1 if i == j else 0)


def test_quotient_group_frozen_example():
    g = quotient_group([(1, 0), (-1, -2)])
    assert g.order == 2
    assert g.lifts[0] == (0, 0)
    assert g.coords[0] == (0, 0)
    # nontrivial coset: phases are -1/2 mod 1 in both edge coordinates
    c = g.coords[1]
    assert (c[0] - Fraction(1, 2)).denominator == 1
    assert (c[1] - Fraction(1, 2)).denominator == 1
    # the lift really represents the coset: lift = sum c_j v_j
    lift = g.lifts[1]
    assert lift == tuple(
        c[0] * a + c[1] * b for a, b in zip((1, 0), (-1, -2))
    )


def test_quotient_group_trivial_for_unimodular():
    g = quotient_group([(1, 0), (0, 1)])
    assert g.order == 1
    assert g.lifts == ((0, 0),)


def test_quotient_group_order_is_index():
    rng = random.Random(41)
    done = 0
    while done < 30:
        n = rng.randint(1, 3)
        V = _random_matrix(rng, n, n, -5, 5)
        d = determinant(V)
        if d == 0:
            continue
        done += 1
        g = quotient_group(V)
        assert g.order == abs(int(d))
        # every phase vector of the identity is zero
        assert all(x == 0 for x in g.coords[0])
        # lifts represent distinct cosets: coords differ mod 1
        seen = set()
        for c in g.coords:
            key = tuple(x - x.__floor__() for x in c)
            assert key not in seen
            seen.add(key)


def test_quotient_group_nonfull_rank_sublattice():
    # edge vector (0, 2): saturation is the y-axis, index 2
    g = quotient_group([(0, 2)])
    assert g.order == 2
    assert g.coords[1][0] % 1 == Fraction(1, 2)


def test_annihilator_basis_example_and_orientation():
    b = annihilator_basis([(1, 0)])
    assert len(b.vectors) == 1
    v = b.vectors[0]
    assert dot(v, (1, 0)) == 0
    assert v in ((0, 1), (0, -1))
    # orientation: [ann; dual] has positive determinant
    dual = dual_basis([(1, 0), (0, 1)])  # u_1 = e1* works as partial dual
    assert determinant([v, dual[0]]) > 0


def test_annihilator_basis_saturated_random():
    rng = random.Random(53)
    done = 0
    while done < 30:
        n = rng.randint(2, 4)
        k = rng.randint(1, n - 1)
        V = _random_matrix(rng, k, n, -4, 4)
        if rank(V) < k:
            continue
        done += 1
        ann = annihilator_basis(V).vectors
        assert len(ann) == n - k
        for a in ann:
            for v in V:
                assert dot(a, v) == 0
        # saturated: Smith invariants of the basis are all 1
        D, _, _ = smith_normal_form(ann)
        assert all(D[i][i] == 1 for i in range(n - k))


def test_integral_solution():
    assert integral_solution([(2,)], (1,)) is None
    u = integral_solution([(2,)], (4,))
    assert u == (2,)
    u = integral_solution([(1, 0), (-1, -2)], (1, 1))
    assert u is not None
    assert dot(u, (1, 0)) == 1 and dot(u, (-1, -2)) == 1


def test_solve_in_span():
    c = solve_in_span([(1, 1, 0), (0, 1, 1)], (2, 3, 1))
    assert c == (Fraction(2), Fraction(1))
    with pytest.raises(SingularInput):
        solve_in_span([(1, 0, 0)], (0, 1, 0))


def test_kernel_basis():
    ker = kernel_basis([(1, 2, 3)])
    assert len(ker) == 2
    for x in ker:
        assert dot((1, 2, 3), x) == 0


def test_matrix_inverse_roundtrip():
    rng = random.Random(71)
    done = 0
    while done < 25:
        n = rng.randint(1, 4)
        A = _random_matrix(rng, n, n, -7, 7)
        if determinant(A) == 0:
            continue
        done += 1
        inv = matrix_inverse(A)
        prod = _matmul(A, inv)
        for i in range(n):
            for j in range(n):
                assert prod[i][j] == (1 if i == j else 0)


def test_plane_line_intersection_basic():
    # E spanned by (1,2) in the plane, J the x-axis ray: E itself is the line
    v = plane_line_intersection([(1, 2)], [(1, 0), (0, 1)])
    assert v in ((1, 2), (-1, -2))
    # rank-3: plane meets a 2-ray cone span in a line
    v = plane_line_intersection(
        [(1, 0, 0), (0, 1, 1)], [(1, 0, 0), (0, 1, 0)]
    )
    assert v in ((1, 0, 0), (-1, 0, 0))
    for a in annihilator_basis([(1, 0, 0), (0, 1, 0)]).vectors:
        assert dot(a, v) == 0


def test_plane_line_intersection_degenerate():
    # plane equal to the cone span: intersection has dimension 2
    with pytest.raises(NonGenericPlane):
        plane_line_intersection([(1, 0, 0), (0, 1, 0)], [(1, 0, 0), (0, 1, 0)])


def test_primitive_vector():
    assert primitive_vector((2, -4, 6)) == (1, -2, 3)
    assert primitive_vector((0, -4)) == (0, -1)
    with pytest.raises(SingularInput):
        primitive_vector((0, 0))
