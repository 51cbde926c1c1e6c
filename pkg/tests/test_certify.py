import copy
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from separatrix import corpus
from separatrix.certify import (
    c2_from_indices, certificate_input, certify, detect_c1, detect_c2, replay_certificate,
)
from separatrix.errors import HypothesisNotInvariant, NotInvariant, ReplayMismatch
from separatrix.gaussian import GaussRational
from separatrix.germ import BranchGerm, VectorFieldGerm
from separatrix.index import NotGeqRat, NotInPosRat, classify
from separatrix.parser import parse_poly
from separatrix.polynomial import BiPoly

from conftest import gaussians
from oracles import certificate_indices, from_sympy_number

X_AXIS = BranchGerm(BiPoly.y())


def test_detect_c1():
    assert detect_c1(corpus.diagonal(-2), X_AXIS).value == -2
    assert detect_c1(corpus.diagonal(GaussRational(1, 1)), X_AXIS).value == GaussRational(1, 1)
    assert detect_c1(corpus.diagonal(2), X_AXIS) is None
    assert detect_c1(corpus.euler(2, 3), corpus.monomial_branch(2, 3)) is None


def test_c2_decision():
    hit = c2_from_indices(GaussRational(-7), GaussRational(Fraction(-1, 2)))
    assert hit.r == Fraction(1, 2) and not hit.swapped
    hit = c2_from_indices(GaussRational(-1), GaussRational(Fraction(-1, 2)))
    # -1 >= -2 fails the first assignment; swapped: r = 1 and -1/2 >= -1
    assert hit is None
    assert c2_from_indices(GaussRational(3), GaussRational(3)) is None
    hit = c2_from_indices(GaussRational(Fraction(-1, 2)), GaussRational(-7))
    assert hit.r == 7 and not hit.swapped


def test_detect_c2_on_transverse_axes():
    # linear saddles have reciprocal axis indices, which never pass
    F = corpus.diagonal(-7)
    assert detect_c2(F, BranchGerm(BiPoly.x()), X_AXIS) is None
    # Ind(y=0) = -7, Ind(x=0) = -1/2
    F = VectorFieldGerm.parse("x^2 + x*y", "-2*y^2 - 7*x*y")
    assert detect_c2(F, BranchGerm(BiPoly.x()), X_AXIS) == 7


def test_smooth_c1():
    cert = certify(VectorFieldGerm.parse("2*x", "-3*y"), X_AXIS)
    assert (cert.kind, cert.stage, cert.index) == ("C1", 0, Fraction(-3, 2))


def test_not_applicable():
    cert = certify(corpus.euler(2, 3), corpus.monomial_branch(2, 3))
    assert cert.kind == "NotApplicable" and cert.index == 6


def test_radial_forced_is_dicritical():
    F = VectorFieldGerm.parse("x", "y")
    assert certify(F, X_AXIS).kind == "NotApplicable"
    cert = certify(F, X_AXIS, force=True)
    assert (cert.kind, cert.stage) == ("Dicritical", 1)


def test_hypothesis_not_invariant():
    with pytest.raises(HypothesisNotInvariant):
        certify(corpus.diagonal(2), corpus.monomial_branch(2, 3))
    with pytest.raises(NotInvariant):
        certify(corpus.diagonal(2), corpus.monomial_branch(2, 3))


def test_step_limit_is_inconclusive():
    S = corpus.monomial_branch(5, 12)
    F = corpus.log_foliation(S.f, parse_poly("y^5 - 2*x^12"), 1, 1)
    cert = certify(F, S, max_steps=2)
    assert cert.kind == "Inconclusive" and cert.reason == "StepLimit"


def test_c2_at_return_point():
    S = corpus.monomial_branch(2, 3)
    F = corpus.log_foliation(S.f, parse_poly("y^2 - x^3 - x^4"), 1, 1)
    cert = certify(F, S)
    assert (cert.kind, cert.stage, cert.r) == ("C2", 3, Fraction(1, 6))
    assert cert.index_s1 == Fraction(-1, 6)
    assert set(cert.curves) == {"S", "E3"}


def test_c1_on_divisor():
    S = corpus.monomial_branch(2, 3)
    F = corpus.log_foliation(S.f, parse_poly("y^2 - 2*x^3"), 1, 1)
    cert = certify(F, S)
    assert (cert.kind, cert.stage, cert.index) == ("C1", 3, Fraction(-1, 12))


def test_pencil_family_stays_nonnegative():
    # 2y d/dx + 3x^2 d/dy + c (2x d/dx + 3y d/dy) keeps y^2 - x^3 invariant with
    # cofactor 6c, but its index never leaves Q+ or 0 on this grid
    S = corpus.monomial_branch(2, 3)
    for c in (0, 1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, GaussRational(0, 1)):
        F = VectorFieldGerm.parse("2*y", "3*x^2")
        F = VectorFieldGerm(F.P + BiPoly.monomial(1, 0, 2 * GaussRational.coerce(c)),
                            F.Q + BiPoly.monomial(0, 1, 3 * GaussRational.coerce(c)))
        assert certify(F, S).kind == "NotApplicable"


# -- replay ---------------------------------------------------------------------


def test_replay_round_trip(tmp_path):
    S = corpus.monomial_branch(2, 3)
    cert = certify(corpus.log_foliation(S.f, parse_poly("y^2 - x^3 - x^4"), 1, 1), S)
    path = tmp_path / "cert.json"
    path.write_text(cert.dumps())
    assert replay_certificate(json.loads(path.read_text()))
    assert replay_certificate(cert)


@pytest.mark.parametrize("tamper", [
    lambda d: d["indices"].__setitem__("index_s1", {"re": "-1/7", "im": "0/1"}),
    lambda d: d.__setitem__("stage", 2),
    lambda d: d.__setitem__("kind", "C1"),
    lambda d: d.__setitem__("trace", d["trace"][:-1]),
    lambda d: d.__setitem__("schema", "cert-v0"),
    lambda d: d["input"].__setitem__("branch", "y^2 - x^"),
])
def test_tampered_replay(tamper):
    S = corpus.monomial_branch(2, 3)
    doc = certify(corpus.log_foliation(S.f, parse_poly("y^2 - x^3 - x^4"), 1, 1), S).to_json()
    bad = copy.deepcopy(doc)
    tamper(bad)
    with pytest.raises(ReplayMismatch):
        replay_certificate(bad)


def test_tampered_index_is_a_mismatch():
    doc = certify(corpus.diagonal(-2), X_AXIS).to_json()
    doc["indices"]["index"] = {"re": "-3/1", "im": "0/1"}
    with pytest.raises(ReplayMismatch):
        replay_certificate(doc)


def test_certificate_json_is_canonical():
    a = certify(corpus.diagonal(Fraction(-3, 2)), X_AXIS).dumps()
    b = certify(corpus.diagonal(Fraction(-3, 2)), X_AXIS).dumps()
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "cert-v1"
    assert doc["input"]["field"] == {"P": "x", "Q": "-3/2*y"}
    F, S, max_steps, force = certificate_input(doc)
    assert F == corpus.diagonal(Fraction(-3, 2)) and S.f == BiPoly.y() and max_steps == 64 and not force


# -- soundness against the oracle -------------------------------------------------


def _certificates(force=False):
    for name, F, S in corpus.certificate_corpus():
        cert = certify(F, S, force=force)
        if cert.kind in ("C1", "C2"):
            yield name, cert


@pytest.mark.parametrize("name, cert", list(_certificates()), ids=lambda v: v if isinstance(v, str) else "")
def test_certificate_revalidates(name, cert):
    values = {k: from_sympy_number(v) for k, v in certificate_indices(cert).items()}
    if cert.kind == "C1":
        (curve,) = cert.curves
        assert values[curve] == cert.index
        assert classify(values[curve], NotInPosRat())
    else:
        s0, s1 = cert.curves
        i0, i1 = values[s0], values[s1]
        assert (i0, i1) == (cert.index_s0, cert.index_s1)
        assert i1.is_rational() and i1.re <= -cert.r and cert.r > 0
        assert classify(i0, NotGeqRat(-1 / cert.r))
    assert replay_certificate(cert)


@settings(max_examples=8)
@given(st.sampled_from([e for e in corpus.certificate_corpus() if not e[0].startswith("diagonal 2")]),
       st.lists(gaussians().filter(bool), min_size=5, max_size=5))
def test_scale_invariance(entry, scalars):
    name, F, S = entry
    base = certify(F, S)
    for c in scalars:
        other = certify(F.scale(c), S)
        assert (other.kind, other.stage) == (base.kind, base.stage)
