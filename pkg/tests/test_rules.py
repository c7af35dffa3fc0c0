import copy
import json
import random
from fractions import Fraction

import pytest

from fvsub.barycentric import FVector, lambda_matrix, limit_polys
from fvsub.complexes import (
    FormalSum,
    SimplicialComplex,
    barycentric_subdivide,
    bundled_corpus,
    f_vector,
    iota_sum,
    random_complex,
    simplex,
    simplex_boundary,
)
from fvsub.errors import (
    DimensionExceeded,
    FormatError,
    NonDominantEigenvalue,
    UnsupportedDimension,
    ValidationError,
)
from fvsub.exactalg import Polynomial, isolate_real_roots
from fvsub.rules import (
    apply_rule,
    apply_rule_labeled,
    b_rule,
    builtin_rule,
    check_rule_symmetry,
    limit_poly_rule,
    parse_rule,
    rule_fvector_check,
    rule_to_json,
    subdivided_fvector_rule,
    transition_matrix,
    validate_rule,
    verify_iota_commutation_rule,
)

BARY2 = builtin_rule("barycentric", 2)


def test_builtin_model_sizes():
    assert len(BARY2.model(1).vertices) == 3 and len(BARY2.model(1).facets) == 2
    assert len(BARY2.model(2).vertices) == 7 and len(BARY2.model(2).facets) == 6
    st2 = builtin_rule("stellar_top", 2, n=2)
    assert len(st2.model(2).vertices) == 4 and len(st2.model(2).facets) == 3
    assert builtin_rule("stellar_top(2)", 2) == st2


def test_builtin_errors():
    with pytest.raises(UnsupportedDimension):
        builtin_rule("stellar_top", 3, n=2)
    with pytest.raises(ValueError):
        builtin_rule("nope", 2)
    with pytest.raises(ValueError):
        builtin_rule("stellar_top", 2)
    with pytest.raises(DimensionExceeded):
        BARY2.model(3)


def test_nontrivial_dimension():
    assert builtin_rule("trivial", 3).nontrivial_dimension is None
    assert BARY2.nontrivial_dimension == 1
    assert builtin_rule("stellar_top(3)", 3).nontrivial_dimension == 3


@pytest.mark.parametrize(
    "rule",
    [builtin_rule("barycentric", 4), builtin_rule("trivial", 3), builtin_rule("stellar_top(2)", 2),
     builtin_rule("stellar_top(3)", 3)],
    ids=lambda r: r.name,
)
def test_builtins_validate(rule):
    assert validate_rule(rule) == []


def test_json_round_trip(tmp_path):
    doc = rule_to_json(BARY2)
    assert parse_rule(doc) == BARY2
    assert parse_rule(json.dumps(doc)) == BARY2
    path = tmp_path / "bary.json"
    path.write_text(json.dumps(doc))
    assert parse_rule(str(path)) == BARY2


def test_trivial_rule_parses():
    rule = parse_rule(rule_to_json(builtin_rule("trivial", 2)))
    assert rule.nontrivial_dimension is None


def _broken(mutate):
    doc = copy.deepcopy(rule_to_json(BARY2))
    mutate(doc)
    return doc


def test_deleted_facet_gives_volume_finding():
    doc = _broken(lambda d: d["models"][2]["facets"].pop())
    with pytest.raises(ValidationError) as exc:
        parse_rule(doc)
    assert "volume" in {f.check for f in exc.value.findings}


def test_carrier_mismatch():
    def mutate(d):
        v = next(v for v in d["models"][2]["vertices"] if v["id"] == "0-1")
        v["carrier"] = [0, 1, 2]

    with pytest.raises(ValidationError) as exc:
        parse_rule(_broken(mutate))
    assert any(f.check == "carrier" and f.k == 2 for f in exc.value.findings)


def test_asymmetric_model_flagged():
    # move the edge midpoint off-center: still a valid subdivision, not permutation invariant
    def mutate(d):
        for m in d["models"][1:]:
            for v in m["vertices"]:
                if v["id"] == "0-1":
                    v["coords"] = ["1/3", "2/3"] + ["0"] * (m["k"] - 1)

    findings = validate_rule(parse_rule(_broken(mutate), validate=False))
    assert "permutation" in {f.check for f in findings}


def test_boundary_incompatibility_flagged():
    # k=2 uses stellar, but k=1 is barycentric: the triangle's edges are not split
    st = builtin_rule("stellar_top(2)", 2)
    rule = type(BARY2)("mixed", 2, (BARY2.model(0), BARY2.model(1), st.model(2)))
    assert "boundary" in {f.check for f in validate_rule(rule)}


@pytest.mark.parametrize(
    "doc",
    [
        "{not json",
        json.dumps({"name": "x"}),
        json.dumps({"name": "x", "max_dim": 0, "models": [{"k": 0, "vertices": [{"id": "0", "carrier": [0], "coords": [1.5]}], "facets": [["0"]]}]}),
    ],
)
def test_format_errors(doc):
    with pytest.raises(FormatError):
        parse_rule(doc)


def test_missing_model_is_validation_error():
    doc = rule_to_json(BARY2)
    doc["models"].pop(1)
    with pytest.raises(ValidationError):
        parse_rule(doc)


@pytest.mark.parametrize("n", range(1, 7))
def test_barycentric_transition_is_lambda(n):
    assert transition_matrix(builtin_rule("barycentric", 6), n).matrix == lambda_matrix(n)


def test_trivial_transition_is_identity():
    t = transition_matrix(builtin_rule("trivial", 3), 4).matrix
    assert list(t.diagonal()) == [1] * 5
    assert t.is_lower_triangular()
    assert all(t[i, j] == int(i == j) for i in range(5) for j in range(5))


def test_stellar_top3_diagonal():
    t = transition_matrix(builtin_rule("stellar_top(3)", 3), 4).matrix
    assert list(t.diagonal()) == [1, 1, 1, 1, 4]
    # interior faces of the coned tetrahedron: 1 vertex, 4 edges, 6 triangles, 4 tetrahedra
    assert list(t.row(4)) == [0, 1, 4, 6, 4]


def test_transition_matrix_errors():
    with pytest.raises(DimensionExceeded):
        transition_matrix(BARY2, 4)
    with pytest.raises(ValueError):
        transition_matrix(BARY2, 0)


def test_apply_rule_examples():
    assert f_vector(apply_rule(BARY2, simplex(2))) == FVector((1, 3, 2))
    assert f_vector(apply_rule(BARY2, simplex_boundary(4))) == FVector((1, 14, 36, 24))
    two = SimplicialComplex([[0, 1, 2], [1, 2, 3]])
    assert f_vector(apply_rule(builtin_rule("stellar_top(2)", 2), two)) == FVector((1, 6, 11, 6))


def test_apply_rule_labels_share_boundary():
    # the shared edge is subdivided once, so its midpoint label appears once
    two = SimplicialComplex([[0, 1, 2], [1, 2, 3]])
    _, labels = apply_rule_labeled(BARY2, two)
    mid = ((1, Fraction(1, 2)), (2, Fraction(1, 2)))
    assert labels.count(mid) == 1


def test_apply_rule_too_big():
    with pytest.raises(DimensionExceeded):
        apply_rule(BARY2, simplex(4))


def test_barycentric_rule_matches_order_complex():
    for X in bundled_corpus().values():
        if X.dim <= 2:
            assert f_vector(apply_rule(BARY2, X)) == f_vector(barycentric_subdivide(X))


@pytest.mark.parametrize("seed", range(8))
def test_rule_fvectors_match_matrix(seed):
    X = random_complex(random.Random(seed), max_vertices=6, max_dim=2)
    for rule in (BARY2, builtin_rule("stellar_top(2)", 2)):
        explicit, predicted = rule_fvector_check(rule, X)
        assert explicit == predicted


def test_twice_applied_matches_matrix_square():
    rule = builtin_rule("stellar_top(2)", 2)
    X = simplex_boundary(4)
    once = apply_rule(rule, X)
    twice = apply_rule(rule, once)
    assert f_vector(twice) == subdivided_fvector_rule(rule, f_vector(X), 2)
    t = transition_matrix(rule, 3).matrix
    t2 = t @ t
    f = f_vector(X).entries
    assert f_vector(twice).entries == tuple(sum(f[i] * t2[i, j] for i in range(4)) for j in range(4))


def test_limit_poly_rule_barycentric():
    p, q, lam = limit_poly_rule(builtin_rule("barycentric", 3), 3)
    assert q == limit_polys(3).q
    assert p == limit_polys(3).p
    assert lam == 6


def test_limit_poly_rule_stellar2_hand_oracle():
    # left eigenvector of [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,1,3,3]] for 3,
    # solved from the bottom: v2 = 3/2, v1 = 1/2, v0 = 0
    _, q, lam = limit_poly_rule(builtin_rule("stellar_top(2)", 2), 3)
    assert lam == 3
    assert q == Polynomial([0, Fraction(1, 2), Fraction(3, 2), 1])


def test_limit_poly_rule_stellar3_not_real_rooted():
    _, q, lam = limit_poly_rule(builtin_rule("stellar_top(3)", 3), 4)
    assert lam == 4
    assert q == Polynomial([0, Fraction(1, 3), Fraction(4, 3), 2, 1])
    assert q == Polynomial([0, 1]) * Polynomial([1, 1]) * Polynomial([Fraction(1, 3), 1, 1])
    assert isolate_real_roots(q).count_real == 2


def test_trivial_has_no_limit():
    with pytest.raises(NonDominantEigenvalue):
        limit_poly_rule(builtin_rule("trivial", 3), 3)


@pytest.mark.parametrize("d", range(2, 7))
def test_barycentric_rule_symmetry(d):
    assert check_rule_symmetry(builtin_rule("barycentric", 5), d)[0]


@pytest.mark.parametrize("m", [2, 3])
def test_stellar_symmetry(m):
    ok, diff = check_rule_symmetry(builtin_rule("stellar_top", m, n=m), m + 1)
    assert ok, diff


@pytest.mark.parametrize("kind", ["barycentric", "stellar_top(3)"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_iota_commutation(kind, n):
    ok, diff = verify_iota_commutation_rule(builtin_rule(kind, 3), n)
    assert ok, diff


def test_b_rule_on_edge():
    m = BARY2.model(1)
    cx, carriers = m.as_complex()
    sigma = FormalSum.of_complex(simplex(2))
    image = b_rule(m, sigma)
    # the whole subdivided edge with weight 1
    assert image == FormalSum.of_complex(cx)
    # both sides equal the interior of the subdivided edge
    interior = FormalSum.of_complex(cx) - FormalSum.of_complex(
        SimplicialComplex([[v] for v, c in carriers.items() if len(c) == 1])
    )
    assert iota_sum(image) == interior
