"""Built-in families of foliation germs with known invariant branches."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Tuple

from .gaussian import GaussRational, Scalar
from .germ import BranchGerm, VectorFieldGerm
from .parser import parse_poly
from .polynomial import BiPoly

Pair = Tuple[VectorFieldGerm, BranchGerm]


def monomial_branch(p: int, q: int) -> BranchGerm:
    """y**p - x**q."""
    return BranchGerm(BiPoly({(0, p): 1, (q, 0): -1}))


def coprime_pairs(limit: int = 12, smallest: int = 2) -> List[Tuple[int, int]]:
    return [
        (p, q)
        for q in range(smallest + 1, limit + 1)
        for p in range(smallest, q)
        if math.gcd(p, q) == 1
    ]


def hamiltonian(f: BiPoly) -> VectorFieldGerm:
    """f_y d/dx - f_x d/dy, which has {f = 0} as a separatrix."""
    return VectorFieldGerm(f.diff_y(), -f.diff_x())


def euler(p: int, q: int) -> VectorFieldGerm:
    """p x d/dx + q y d/dy, for which y**p - x**q is invariant."""
    return VectorFieldGerm(BiPoly.monomial(1, 0, p), BiPoly.monomial(0, 1, q))


def diagonal(lam: Scalar) -> VectorFieldGerm:
    return VectorFieldGerm(BiPoly.x(), BiPoly.monomial(0, 1, lam))


def log_foliation(f: BiPoly, g: BiPoly, l1: Scalar, l2: Scalar) -> VectorFieldGerm:
    """Kernel of l1*g*df + l2*f*dg; both {f = 0} and {g = 0} are invariant."""
    A = g * f.diff_x() * l1 + f * g.diff_x() * l2
    B = g * f.diff_y() * l1 + f * g.diff_y() * l2
    return VectorFieldGerm(-B, A)


def first_blowup_fields() -> List[VectorFieldGerm]:
    """Non-dicritical singular fields of degree <= 3."""
    fields = [diagonal(lam) for lam in (
        -1, 2, 3, -2, Fraction(1, 2), Fraction(-3, 2), Fraction(5, 7), 7,
        GaussRational(1, 1), GaussRational(0, 1), GaussRational(-2, 3), Fraction(-1, 4),
    )]
    texts = [
        ("2*y", "3*x^2"),
        ("y", "x"),
        ("y", "-x"),
        ("x + y", "y"),
        ("x^2", "y"),
        ("y", "x^2"),
        ("x*y", "2*y^2 - x^3"),
        ("x - y^2", "2*y + x^2"),
        ("3*y^2", "2*x"),
        ("x^2 - y^2", "x*y"),
        ("y^3 + x", "-y + x^2*y"),
        ("x + x*y", "-y + x^3"),
        ("2*x + y^2", "3*y - x^2"),
        ("i*x + y", "x + y^3"),
        ("x*y^2", "x^3 + y^3"),
    ]
    fields += [VectorFieldGerm(parse_poly(p), parse_poly(q)) for p, q in texts]
    return fields


def singular_pairs(limit: int = 7) -> List[Pair]:
    """Pairs (F, S) with S singular, from three families."""
    pairs: List[Pair] = []
    for p, q in coprime_pairs(limit):
        S = monomial_branch(p, q)
        pairs.append((hamiltonian(S.f), S))
        pairs.append((euler(p, q), S))
    cusp = monomial_branch(2, 3)
    for l2 in (1, -1, Fraction(1, 3), GaussRational(0, 1), GaussRational(2, -1)):
        for g in ("y", "x", "y - x", "y^2 - 2*x^3", "y^2 - x^3 - x^4"):
            pairs.append((log_foliation(cusp.f, parse_poly(g), 1, l2), cusp))
    for p, q in ((3, 4), (3, 5), (2, 5)):
        S = monomial_branch(p, q)
        g = parse_poly(f"y^{p} - 2*x^{q}")
        pairs.append((log_foliation(S.f, g, 1, Fraction(1, 2)), S))
    return pairs


def certificate_corpus() -> List[Tuple[str, VectorFieldGerm, BranchGerm]]:
    """Labelled inputs for the certificate driver, covering every outcome."""
    out: List[Tuple[str, VectorFieldGerm, BranchGerm]] = []
    lams = (Fraction(-3, 2), -2, GaussRational(1, 1), 2, Fraction(1, 3))
    for lam in lams:
        out.append((f"diagonal {lam}", diagonal(lam), BranchGerm(BiPoly.y())))
    for p, q in ((2, 3), (2, 5), (3, 4), (3, 5), (3, 7), (5, 7)):
        S = monomial_branch(p, q)
        out.append((f"euler {p},{q}", euler(p, q), S))
        out.append((f"hamiltonian {p},{q}", hamiltonian(S.f), S))
        for tail in (f"x^{q + 1}", f"2*x^{q}"):
            g = S.f + parse_poly(tail) if tail.startswith("x") else parse_poly(f"y^{p} - {tail}")
            for l2 in (1, Fraction(1, 3), GaussRational(0, 1)):
                out.append((f"log {p},{q} {tail} {l2}", log_foliation(S.f, g, 1, l2), S))
    # tangent directions outside Q(i): only the sum over them is exact
    cusp = monomial_branch(2, 3)
    for g in ("x^2 - 2*y^2", "x^2 + x*y - y^2"):
        for l2 in (1, GaussRational(0, 1)):
            out.append((f"log 2,3 {g} {l2}", log_foliation(cusp.f, parse_poly(g), 1, l2), cusp))
    return out
