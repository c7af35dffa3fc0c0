import warnings
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fvsub.barycentric import (
    FVector,
    check_symmetry,
    denominator_report,
    eigendata,
    factor_denominator,
    lambda_entry,
    lambda_matrix,
    limit_polys,
    limit_roots,
    normalized_polys,
    scaling_constant,
    subdivided_fvector,
)
from fvsub.errors import FactorizationTimeout, RealRootDeficit
from fvsub.exactalg import Polynomial, RationalMatrix

from reference_values import P_ROOTS_TEXT, PINV10_ROWS, Q_ROOTS, padded


def alternating_sum(i, j):
    """sum_l (-1)^(j-l) C(j, l) l^i: surjections from an i-set onto a j-set."""
    return sum((-1) ** (j - l) * comb(j, l) * l**i for l in range(j + 1))


@pytest.mark.parametrize("i", range(0, 10))
def test_lambda_entry_counts_surjections(i):
    # i-simplex has i+1 vertices; j-faces interior correspond to ordered
    # partitions of those vertices into j+1 blocks
    for j in range(0, i + 1):
        assert lambda_entry(i, j) == alternating_sum(i + 1, j + 1)


def test_lambda_entry_edges():
    assert lambda_entry(-1, -1) == 1
    assert lambda_entry(3, -1) == 0
    assert lambda_entry(-1, 2) == 0
    assert lambda_entry(1, 3) == 0
    assert lambda_entry(2, 2) == 6
    with pytest.raises(ValueError):
        lambda_entry(-2, 0)


def test_lambda_matrix_small():
    assert lambda_matrix(2) == RationalMatrix([[1, 0, 0], [0, 1, 0], [0, 1, 2]], offset=-1)
    m = lambda_matrix(3)
    assert m.at(2, 1) == 6 and m.at(2, 2) == 6 and m.at(1, 0) == 1
    assert m.at(-1, -1) == 1


@pytest.mark.parametrize("d", range(1, 11))
def test_lambda_diagonal_is_factorials(d):
    assert list(lambda_matrix(d).diagonal()) == [factorial(k) for k in range(d + 1)]


def test_pinv10_matches_reference_rows():
    pinv = eigendata(10).Pinv
    for k, row in enumerate(PINV10_ROWS):
        assert list(pinv.row(k)) == padded(row)


@pytest.mark.parametrize("d", range(2, 11))
def test_last_row_stable_across_sizes(d):
    row = eigendata(d).Pinv.row(d)
    assert list(eigendata(10).Pinv.row(d)) == list(row) + [0] * (10 - d)


def test_subdivided_fvector_examples():
    assert subdivided_fvector((1, 2, 1), 1) == FVector((1, 3, 2))
    assert subdivided_fvector((1, 4, 6, 4), 1) == FVector((1, 14, 36, 24))
    assert subdivided_fvector((1, 3, 3, 1), 1) == FVector((1, 7, 12, 6))
    assert subdivided_fvector((1, 3, 3, 1), 0) == FVector((1, 3, 3, 1))


def test_fvector_basics():
    f = FVector((1, 4, 6, 4))
    assert f.d == 3 and f.at(-1) == 1 and f.at(2) == 4
    assert f.polynomial() == Polynomial([4, 6, 4, 1])
    with pytest.raises(ValueError):
        FVector(())
    with pytest.raises(ValueError):
        FVector((1, -1))


def test_normalized_polys_tetrahedron_boundary():
    p, q = normalized_polys((1, 4, 6, 4), 1)
    assert q == Polynomial([Fraction(1, 6), Fraction(7, 3), 6, 4])
    assert p == Polynomial([4, 6, Fraction(7, 3), Fraction(1, 6)])


def test_limit_polys_examples():
    assert limit_polys(2).q == Polynomial([0, 1, 1])
    assert limit_polys(2).p == Polynomial([1, 1])
    assert limit_polys(3).q == Polynomial([0, Fraction(1, 2), Fraction(3, 2), 1])
    assert limit_polys(4).p == Polynomial([1, 2, Fraction(13, 11), Fraction(2, 11)])
    doc = limit_polys(4).to_json()
    assert doc["q"] == ["0", "2/11", "13/11", "2", "1"]


@pytest.mark.parametrize("d", range(2, 11))
def test_q_is_left_eigenvector(d):
    """q_d's coefficients form a left eigenvector of Lambda_d for d!."""
    row = eigendata(d).Pinv.row(d)
    m = lambda_matrix(d)
    image = [sum(row[i] * m[i, j] for i in range(d + 1)) for j in range(d + 1)]
    assert image == [factorial(d) * x for x in row]


@pytest.mark.parametrize("f", [(1, 4, 6, 4), (1, 3, 3, 1), (1, 5, 9, 6), (1, 4, 5, 2)])
def test_normalized_q_approaches_scaled_limit(f):
    c = scaling_constant(f)
    q_lim = limit_polys(3).q * c
    errs = []
    for n in (2, 4, 6, 8):
        _, q = normalized_polys(f, n)
        errs.append(max(abs(a - b) for a, b in zip(q.coeffs, q_lim.coeffs)))
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < Fraction(1, 10**3)


def test_scaling_constant_examples():
    # tetrahedron boundary: each of the 4 triangles contributes one copy of q_3
    assert scaling_constant((1, 4, 6, 4)) == 4
    assert scaling_constant((1, 3, 3, 1)) == 1


@pytest.mark.parametrize("d", range(2, 11))
def test_symmetry(d):
    ok, diff = check_symmetry(d)
    assert ok and diff.is_zero()


def test_limit_roots_d3():
    lr = limit_roots(3)
    assert [float(r) for r in lr.roots_p] == pytest.approx([-2, -1], abs=1e-12)
    assert [float(r) for r in lr.roots_q] == pytest.approx([-1, -0.5, 0], abs=1e-12)
    assert not lr.deficit
    assert lr.csv_rows()[0][:2] == (3, "p")


@pytest.mark.parametrize("d", range(2, 11))
def test_roots_reciprocal_and_mirrored(d):
    lr = limit_roots(d)
    nonzero_q = [r for r in lr.roots_q if abs(r) > Fraction(1, 10**9)]
    assert sorted(1 / r for r in nonzero_q) == pytest.approx(sorted(lr.roots_p), rel=1e-8)
    for r, s in zip(lr.roots_q, reversed(lr.roots_q)):
        assert abs(r + s + 1) < 1e-9


def test_limit_roots_needs_d2():
    with pytest.raises(ValueError):
        limit_roots(1)


def test_no_deficit_warning_for_barycentric():
    with warnings.catch_warnings():
        warnings.simplefilter("error", RealRootDeficit)
        for d in range(2, 11):
            limit_roots(d)


def test_factor_denominator():
    assert factor_denominator(34399) == ({41: 1, 839: 1}, True)
    assert factor_denominator(12) == ({2: 2, 3: 1}, False)
    assert factor_denominator(1) == ({}, True)
    assert factor_denominator(123031432784730871) == (
        {31: 1, 47: 1, 89: 1, 107: 1, 547: 1, 3217: 1, 5039: 1},
        True,
    )


def test_factor_denominator_beyond_bound():
    big = (10**9 + 7) * (10**9 + 9) * (10**9 + 21)
    with pytest.raises(FactorizationTimeout) as exc:
        factor_denominator(big, bound=100)
    assert exc.value.partial == ({}, big)


def test_denominator_report_d7():
    rep = denominator_report(7)
    assert rep[1]["coefficient"] == "90/34399"
    # 34399 = 41 * 839; the product 11 * 53 * 59 is 34397
    assert rep[1]["factors"] == {41: 1, 839: 1}
    assert 41 * 839 == 34399
    assert rep[1]["square_free"]


@pytest.mark.parametrize("d", range(2, 11))
def test_denominators_square_free(d):
    assert all(e["square_free"] for e in denominator_report(d))


@given(st.lists(st.integers(0, 30), min_size=2, max_size=6), st.integers(0, 3))
def test_subdivision_preserves_empty_face_count(f, n):
    f = [1] + f[1:]
    assert subdivided_fvector(f, n).at(-1) == 1
    # vertices of the subdivision are the nonempty faces
    if n == 1:
        assert subdivided_fvector(f, 1).at(0) == sum(f[1:])


def _last_place(text):
    # integers are printed exactly; allow the refinement tolerance
    return Fraction(1, 10 ** len(text.split(".")[1])) if "." in text else Fraction(1, 10**12)


@pytest.mark.parametrize("d", sorted(P_ROOTS_TEXT))
def test_p_roots_within_one_printed_unit(d):
    """Reference p-roots carry five significant figures and agree to within one
    unit in their last place, apart from one misprinted entry."""
    got = sorted(limit_roots(d).roots_p)
    printed = sorted(P_ROOTS_TEXT[d], key=Fraction)
    for g, txt in zip(got, printed):
        if (d, txt) == (7, "-1.2570"):
            # reciprocal of the q-root -.79492 is -1.25799: the entry should read -1.2580
            assert abs(g - Fraction("-1.2580")) <= _last_place(txt)
            assert abs(g - 1 / Fraction(str(Q_ROOTS[7][2]))) < Fraction(1, 10**4)
            continue
        assert abs(g - Fraction(txt)) <= _last_place(txt), (d, txt, float(g))
