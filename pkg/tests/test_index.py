from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from separatrix import corpus
from separatrix.blowup import Scene, blow_up_scene
from separatrix.errors import (
    BranchNotSmooth, DegenerateAlongBranch, DicriticalDivisor, NotInvariant, NotSingularThere,
)
from separatrix.gaussian import GaussRational
from separatrix.germ import BranchGerm, VectorFieldGerm
from separatrix.index import (
    GeqRat, LeqRat, NotGeqRat, NotInPosRat, PosRatOrZero, axis_index, classify, cs_index_smooth,
    css_index_branch, divisor_index_at, divisor_index_sum_first_blowup, graph_series,
)
from separatrix.parser import parse_poly
from separatrix.polynomial import BiPoly, UniPoly
from separatrix.resolution import choose_centre

from conftest import gaussians
from oracles import T, contour_index, from_sympy_number, gauss_sympy, residue_index, to_sympy

X_AXIS = BranchGerm(BiPoly.y())
Y_AXIS = BranchGerm(BiPoly.x())


@given(gaussians())
def test_diagonal(lam):
    assume(lam)
    F = corpus.diagonal(lam)
    assert cs_index_smooth(F, X_AXIS) == lam
    assert cs_index_smooth(F, Y_AXIS) == 1 / lam


def test_graph_series():
    # y - x - y^2 = 0: Catalan numbers
    s = graph_series(parse_poly("y - x - y^2"), 7)
    assert s == UniPoly([0, 1, 1, 2, 5, 14, 42])


@pytest.mark.parametrize("P, Q, branch, expected", [
    ("3*x", "7*y", "y", Fraction(7, 3)),
    ("3*x", "7*y", "x", Fraction(3, 7)),
    ("x", "2*y + x^2", "y - x^2", 2),
    ("x + y", "y", "y", 1),
    ("x^2", "-y", "y", 0),
])
def test_smooth_examples(P, Q, branch, expected):
    assert cs_index_smooth(VectorFieldGerm.parse(P, Q), BranchGerm.parse(branch)) == expected


def test_saddle_node_strong_separatrix_needs_high_truncation():
    # x^k d/dx - y d/dy: {y = 0} has index 0 but the field vanishes to order k along it
    F = VectorFieldGerm.parse("x^40", "-y")
    assert cs_index_smooth(F, X_AXIS) == 0


def test_degenerate_and_singular_inputs():
    with pytest.raises(BranchNotSmooth):
        cs_index_smooth(corpus.euler(2, 3), BranchGerm.parse("y^2 - x^3"))
    with pytest.raises(DegenerateAlongBranch):
        cs_index_smooth(VectorFieldGerm(BiPoly.y(), BiPoly.y() * BiPoly.x(), saturate=False), X_AXIS)


@pytest.mark.parametrize("p, q", [(2, 3), (3, 5), (2, 5), (3, 4), (5, 7)])
def test_euler_index(p, q):
    assert css_index_branch(corpus.euler(p, q), corpus.monomial_branch(p, q)) == p * q


def test_css_records_blowups():
    iv = css_index_branch(corpus.euler(2, 3), corpus.monomial_branch(2, 3))
    assert iv.blowups == (2,)
    assert css_index_branch(corpus.euler(3, 7), corpus.monomial_branch(3, 7)).blowups == (3, 3)


def test_css_rejects_non_invariant():
    with pytest.raises(NotInvariant):
        css_index_branch(corpus.diagonal(2), corpus.monomial_branch(2, 3))


def _oracle_pairs():
    out = []
    for p, q in [(2, 3), (2, 5), (3, 4), (3, 5)]:
        S = corpus.monomial_branch(p, q)
        out.append((corpus.euler(p, q), S, p, q))
        out.append((corpus.hamiltonian(S.f), S, p, q))
        for g, l2 in [("y", 1), ("x", Fraction(2, 3)), (f"y^{p} - 2*x^{q}", GaussRational(1, 2)),
                      (f"y^{p} - x^{q} - x^{q + 1}", -1)]:
            out.append((corpus.log_foliation(S.f, parse_poly(g), 1, l2), S, p, q))
    return out


@pytest.mark.parametrize("F, S, p, q", _oracle_pairs())
def test_singular_index_against_residue_oracle(F, S, p, q):
    expected = residue_index(to_sympy(F.P), to_sympy(F.Q), to_sympy(S.f), T**p, T**q)
    assert css_index_branch(F, S) == from_sympy_number(expected)


@pytest.mark.parametrize("F, S, p, q", _oracle_pairs()[::3])
def test_singular_index_against_contour_integral(F, S, p, q):
    value = complex(css_index_branch(F, S).value)
    approx = contour_index(to_sympy(F.P), to_sympy(F.Q), to_sympy(S.f), T**p, T**q, radius=0.2)
    assert abs(approx - value) < 1e-8


def test_log_foliation_index_formula():
    # Ind(S) = -(l2 / l1) * I(f, g); I(y^2 - x^3, y) = 3, I(y^2 - x^3, y^2 - 2 x^3) = 6
    S = corpus.monomial_branch(2, 3)
    F = corpus.log_foliation(S.f, parse_poly("y"), 2, 1)
    assert css_index_branch(F, S) == Fraction(-3, 2)
    F = corpus.log_foliation(S.f, parse_poly("y^2 - 2*x^3"), 1, GaussRational(0, 1))
    assert css_index_branch(F, S) == GaussRational(0, -6)


def _triangular(F, S, h):
    """Push (F, S) forward by (x, y) -> (x, y + h(x))."""
    x, y = BiPoly.x(), BiPoly.y()
    back = (x, y - h)
    P = F.P.compose(*back)
    Q = (F.Q + h.diff_x() * F.P).compose(*back)
    return VectorFieldGerm(P, Q), BranchGerm(S.f.compose(*back), check_squarefree=False)


@settings(max_examples=25)
@given(st.sampled_from(_oracle_pairs()), gaussians(real_only=True), gaussians())
def test_index_is_a_local_invariant(case, a, b):
    F, S, p, q = case
    h = BiPoly({(1, 0): a, (2, 0): b})
    F2, S2 = _triangular(F, S, h)
    assert css_index_branch(F2, S2) == css_index_branch(F, S)
    assert css_index_branch(F.swap(), BranchGerm(S.f.swap())) == css_index_branch(F, S)


@settings(max_examples=25)
@given(st.sampled_from(_oracle_pairs()), gaussians(real_only=True))
def test_transformed_index_against_oracle(case, a):
    F, S, p, q = case
    h = BiPoly({(2, 0): a})
    F2, S2 = _triangular(F, S, h)
    expected = residue_index(to_sympy(F2.P), to_sympy(F2.Q), to_sympy(S2.f),
                             T**p, T**q + gauss_sympy(a) * T**(2 * p))
    assert css_index_branch(F2, S2) == from_sympy_number(expected)


@pytest.mark.parametrize("F, S", corpus.singular_pairs())
def test_blow_up_shift(F, S):
    before = css_index_branch(F, S)
    chart, c = choose_centre(S)
    scene = blow_up_scene(Scene(F, S), chart, c)
    after = css_index_branch(scene.field, scene.branch)
    assert before.value - S.multiplicity ** 2 == after.value


@pytest.mark.parametrize("F", corpus.first_blowup_fields())
def test_first_divisor_sum(F):
    assert divisor_index_sum_first_blowup(F) == -1


def test_first_divisor_sum_dicritical():
    with pytest.raises(DicriticalDivisor):
        divisor_index_sum_first_blowup(VectorFieldGerm.parse("x", "y"))


def test_divisor_points_of_hamiltonian_cusp():
    # after one blow-up of 2y d/dx - 3x^2 d/dy the only singular point on the
    # divisor is v = 0; the chart V origin is regular and contributes nothing
    F = corpus.hamiltonian(parse_poly("y^2 - x^3"))
    from separatrix.blowup import Chart, blow_up_field
    G, _, _ = blow_up_field(F, Chart.U)
    H, _, _ = blow_up_field(F, Chart.V)
    assert divisor_index_at(G, 0, (0, 0)) == -1
    assert H.P.constant_term() or H.Q.constant_term()
    assert axis_index(H, 1) == 0
    with pytest.raises(NotSingularThere):
        divisor_index_at(G, 0, (0, 5))


@pytest.mark.parametrize("value, test, expected", [
    (0, PosRatOrZero(), True),
    (Fraction(1, 3), PosRatOrZero(), True),
    (-1, PosRatOrZero(), False),
    (GaussRational(1, 1), PosRatOrZero(), False),
    (GaussRational(1, 1), NotInPosRat(), True),
    (0, NotInPosRat(), False),
    (-2, LeqRat(Fraction(-1)), True),
    (GaussRational(-2, 1), LeqRat(Fraction(-1)), False),
    (Fraction(-1, 2), GeqRat(Fraction(-1)), True),
    (Fraction(-1, 2), NotGeqRat(Fraction(-1)), False),
    (GaussRational(5, 1), NotGeqRat(Fraction(-1)), True),
])
def test_membership(value, test, expected):
    assert classify(value, test) is expected


@given(gaussians())
def test_membership_partitions(v):
    assert classify(v, PosRatOrZero()) != classify(v, NotInPosRat())
    assert classify(v, GeqRat(Fraction(-2))) != classify(v, NotGeqRat(Fraction(-2)))
