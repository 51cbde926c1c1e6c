import pytest

from separatrix.errors import MixedTangentCone, NonvanishingAtOrigin, NotInvariant, ZeroPolynomial
from separatrix.gaussian import GaussRational
from separatrix.germ import BranchGerm, VectorFieldGerm, cofactor, is_invariant, multiplicity, tangent_line
from separatrix.parser import parse_poly
from separatrix.polynomial import BiPoly


def test_saturation_divides_common_factor():
    F = VectorFieldGerm.parse("x^2 + x*y", "x*y + y^2")
    assert F.P == parse_poly("x") and F.Q == parse_poly("y")
    assert F.removed_factor == parse_poly("x + y")


def test_saturation_can_be_skipped():
    F = VectorFieldGerm(parse_poly("x^2"), parse_poly("x*y"), saturate=False)
    assert F.P == parse_poly("x^2")


def test_zero_field_rejected():
    with pytest.raises(ZeroPolynomial):
        VectorFieldGerm(BiPoly(), BiPoly())


@pytest.mark.parametrize("text, m", [("y", 1), ("y^2 - x^3", 2), ("y^3 - x^7", 3), ("x + y^5", 1), ("(y - x)^2 - x^5", 2)])
def test_multiplicity(text, m):
    assert multiplicity(BranchGerm.parse(text)) == m


def test_tangent_lines():
    assert tangent_line(BranchGerm.parse("y^2 - x^3")).is_x_axis()
    assert tangent_line(BranchGerm.parse("x^2 - y^5")).is_y_axis()
    t = tangent_line(BranchGerm.parse("(y - 2*x)^2 - x^5"))
    assert (t.beta, t.gamma) == (GaussRational(-2), GaussRational(1))


def test_mixed_tangent_cone():
    with pytest.raises(MixedTangentCone):
        BranchGerm.parse("x*y + x^3").tangent
    with pytest.raises(MixedTangentCone):
        BranchGerm.parse("y^2 - x^2").tangent


def test_branch_must_pass_through_origin():
    with pytest.raises(NonvanishingAtOrigin):
        BranchGerm.parse("1 + y")


def test_squarefree_check():
    with pytest.raises(MixedTangentCone):
        BranchGerm.parse("(y - x^2)^2")


def test_cofactor():
    F = VectorFieldGerm.parse("2*x", "3*y")
    S = BranchGerm.parse("y^2 - x^3")
    assert cofactor(F, S) == BiPoly.const(6)
    assert is_invariant(F, S.f)
    with pytest.raises(NotInvariant):
        cofactor(VectorFieldGerm.parse("x", "y"), S)


def test_swap_and_scale():
    F = VectorFieldGerm.parse("x + y^2", "3*y")
    assert F.swap() == VectorFieldGerm.parse("3*x", "y + x^2")
    assert F.scale(2).P == parse_poly("2*x + 2*y^2")
    assert F.to_json() == {"P": "x + y^2", "Q": "3*y"}
