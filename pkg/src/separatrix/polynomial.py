"""Univariate and sparse bivariate polynomials over Q(i).

``UniPoly`` stores a dense coefficient tuple (constant term first).
``BiPoly`` stores a sparse map ``(i, j) -> c`` for ``c * x**i * y**j`` and
never keeps zero coefficients.  Both are immutable values.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .gaussian import ZERO, GaussRational, Scalar

Exponent = Tuple[int, int]


def _g(c) -> GaussRational:
    return GaussRational.coerce(c)


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_g(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "UniPoly":
        return cls([ZERO] * n + [_g(c)])

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        return cls([c])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def order(self) -> Optional[int]:
        """Index of the lowest nonzero coefficient, None for the zero polynomial."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def __getitem__(self, k: int) -> GaussRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def leading(self) -> GaussRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __rsub__(self, other):
        return _as_uni(other) - self

    def __mul__(self, other):
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a_i, a in enumerate(self.coeffs):
            if not a:
                continue
            for b_i, b in enumerate(other.coeffs):
                if b:
                    out[a_i + b_i] = out[a_i + b_i] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "UniPoly":
        c = _g(c)
        return UniPoly(a * c for a in self.coeffs)

    def truncate(self, n: int) -> "UniPoly":
        """Keep terms of degree < n."""
        return UniPoly(self.coeffs[:n])

    def mul_trunc(self, other: "UniPoly", n: int) -> "UniPoly":
        """Product modulo t**n."""
        out = [ZERO] * n
        for a_i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for b_i, b in enumerate(other.coeffs[: n - a_i]):
                if b:
                    out[a_i + b_i] = out[a_i + b_i] + a * b
        return UniPoly(out)

    def shift_down(self, k: int) -> "UniPoly":
        """Divide by t**k; the low coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError("polynomial not divisible by t**k")
        return UniPoly(self.coeffs[k:])

    def shift_up(self, k: int) -> "UniPoly":
        return UniPoly([ZERO] * k + list(self.coeffs)) if self.coeffs else self

    def derivative(self) -> "UniPoly":
        return UniPoly(c * k for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, t):
        acc = ZERO if isinstance(t, (GaussRational, int)) else 0
        for c in reversed(self.coeffs):
            acc = acc * t + (c if not isinstance(acc, (complex, float)) else complex(c))
        return acc

    def reverse(self, degree: Optional[int] = None) -> "UniPoly":
        """t**degree * p(1/t)."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [ZERO] * (d + 1 - len(self.coeffs))
        return UniPoly(reversed(cs[: d + 1]))

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self.scale(self.leading().inverse())

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return UniPoly(), self
        quot = [ZERO] * dq
        inv = other.leading().inverse()
        db = other.degree
        for k in range(dq - 1, -1, -1):
            c = rem[k + db] * inv
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(quot), UniPoly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(_as_uni(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_uni(other))[1]

    def series_inverse(self, n: int) -> "UniPoly":
        """Power-series inverse modulo t**n; requires a nonzero constant term."""
        if not self[0]:
            raise ZeroDivisionError("series inverse needs a unit constant term")
        inv0 = self[0].inverse()
        out = [inv0]
        for k in range(1, n):
            acc = ZERO
            for j in range(1, min(k, self.degree) + 1):
                acc = acc + self[j] * out[k - j]
            out.append(-acc * inv0)
        return UniPoly(out[:n])

    def compose_trunc(self, s: "UniPoly", n: int) -> "UniPoly":
        """p(s(t)) modulo t**n."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc.mul_trunc(s, n) + UniPoly.const(c)
        return acc.truncate(n)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def _as_uni(p) -> UniPoly:
    if isinstance(p, UniPoly):
        return p
    return UniPoly.const(p)


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# Bivariate
# ---------------------------------------------------------------------------


class BiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, Scalar]] = None):
        clean: Dict[Exponent, GaussRational] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                c = _g(c)
                if c:
                    clean[(int(i), int(j))] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def _raw(cls, terms: Dict[Exponent, GaussRational]) -> "BiPoly":
        # caller guarantees: no zero coefficients
        p = cls.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def const(cls, c: Scalar) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "BiPoly":
        return cls.monomial(0, 1)

    @property
    def terms(self) -> Mapping[Exponent, GaussRational]:
        return self._terms

    def items(self) -> Iterator[Tuple[Exponent, GaussRational]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        return min((i + j for i, j in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self._terms), default=-1)

    def coefficient(self, i: int, j: int) -> GaussRational:
        return self._terms.get((i, j), ZERO)

    def constant_term(self) -> GaussRational:
        return self._terms.get((0, 0), ZERO)

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly._raw({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self._terms}) <= 1

    # -- arithmetic -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        try:
            return self._terms == BiPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = _as_bi(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_bi(other))

    def __rsub__(self, other):
        return _as_bi(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        out: Dict[Exponent, GaussRational] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, ZERO) + c1 * c2
        return BiPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "BiPoly":
        c = _g(c)
        if not c:
            return BiPoly()
        return BiPoly._raw({e: a * c for e, a in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, i: int, j: int) -> "BiPoly":
        return BiPoly._raw({(a + i, b + j): c for (a, b), c in self._terms.items()})

    def monomial_content(self) -> Exponent:
        """Largest (i, j) such that x**i * y**j divides the polynomial."""
        if not self._terms:
            return (0, 0)
        return (min(e[0] for e in self._terms), min(e[1] for e in self._terms))

    def div_monomial(self, i: int, j: int) -> "BiPoly":
        out = {}
        for (a, b), c in self._terms.items():
            if a < i or b < j:
                raise ValueError(f"not divisible by x^{i} y^{j}")
            out[(a - i, b - j)] = c
        return BiPoly._raw(out)

    # -- calculus and substitution --------------------------------------

    def diff_x(self) -> "BiPoly":
        return BiPoly._raw({(i - 1, j): c * i for (i, j), c in self._terms.items() if i > 0})

    def diff_y(self) -> "BiPoly":
        return BiPoly._raw({(i, j - 1): c * j for (i, j), c in self._terms.items() if j > 0})

    def swap(self) -> "BiPoly":
        """f(y, x)."""
        return BiPoly._raw({(j, i): c for (i, j), c in self._terms.items()})

    def compose(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """f(px(x, y), py(x, y))."""
        xp = _PowerCache(px)
        yp = _PowerCache(py)
        acc = BiPoly()
        for (i, j), c in self._terms.items():
            acc = acc + (xp[i] * yp[j]).scale(c)
        return acc

    def translate(self, a: Scalar, b: Scalar) -> "BiPoly":
        """f(x + a, y + b)."""
        a, b = _g(a), _g(b)
        if not a and not b:
            return self
        return self.compose(BiPoly.x() + a, BiPoly.y() + b)

    def __call__(self, x, y):
        exact = isinstance(x, (GaussRational, int)) and isinstance(y, (GaussRational, int))
        total = ZERO if exact else 0
        for (i, j), c in self._terms.items():
            total = total + (c if exact else complex(c)) * (x ** i) * (y ** j)
        return total

    def at_origin(self) -> GaussRational:
        return self.constant_term()

    def restrict_x(self, value: Scalar = 0) -> UniPoly:
        """f(value, t) as a polynomial in t."""
        value = _g(value)
        coeffs: Dict[int, GaussRational] = {}
        for (i, j), c in self._terms.items():
            if i and not value:
                continue
            coeffs[j] = coeffs.get(j, ZERO) + c * (value ** i)
        n = max(coeffs, default=-1) + 1
        return UniPoly(coeffs.get(k, ZERO) for k in range(n))

    def restrict_y(self, value: Scalar = 0) -> UniPoly:
        """f(t, value) as a polynomial in t."""
        return self.swap().restrict_x(value)

    def along_graph(self, s: UniPoly, n: int) -> UniPoly:
        """f(t, s(t)) modulo t**n."""
        by_j: Dict[int, Dict[int, GaussRational]] = {}
        for (i, j), c in self._terms.items():
            by_j.setdefault(j, {})[i] = c
        acc = UniPoly()
        s_pow = UniPoly.const(1)
        for j in range(max(by_j, default=-1) + 1):
            if j in by_j:
                row = by_j[j]
                coeff = UniPoly(row.get(k, ZERO) for k in range(max(row) + 1))
                acc = acc + coeff.mul_trunc(s_pow, n)
            s_pow = s_pow.mul_trunc(s, n)
        return acc.truncate(n)

    # -- division -------------------------------------------------------

    def divmod(self, divisor: "BiPoly") -> Tuple["BiPoly", "BiPoly"]:
        """Multivariate division by a single divisor under graded-lex order.

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e = max(divisor._terms, key=_grlex)
        lead_c_inv = divisor._terms[lead_e].inverse()
        work = dict(self._terms)
        quot: Dict[Exponent, GaussRational] = {}
        rem: Dict[Exponent, GaussRational] = {}
        while work:
            e = max(work, key=_grlex)
            c = work[e]
            if e[0] >= lead_e[0] and e[1] >= lead_e[1]:
                qe = (e[0] - lead_e[0], e[1] - lead_e[1])
                qc = c * lead_c_inv
                quot[qe] = quot.get(qe, ZERO) + qc
                for (a, b), d in divisor._terms.items():
                    k = (a + qe[0], b + qe[1])
                    v = work.get(k, ZERO) - qc * d
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
            else:
                rem[e] = c
                del work[e]
        return BiPoly(quot), BiPoly._raw(rem)

    def exact_div(self, divisor: "BiPoly") -> "BiPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def leading_coefficient(self) -> GaussRational:
        if not self._terms:
            return ZERO
        return self._terms[max(self._terms, key=_grlex)]

    def normalized(self) -> "BiPoly":
        """Scaled so that the graded-lex leading coefficient is 1."""
        if not self._terms:
            return self
        return self.scale(self.leading_coefficient().inverse())

    def __repr__(self):
        from .parser import format_poly

        return f"BiPoly({format_poly(self)!r})"

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)


def _grlex(e: Exponent):
    return (e[0] + e[1], e[0])


def _as_bi(p) -> BiPoly:
    if isinstance(p, BiPoly):
        return p
    return BiPoly.const(p)


class _PowerCache:
    def __init__(self, base: BiPoly):
        self.powers = [BiPoly.const(1), base]

    def __getitem__(self, n: int) -> BiPoly:
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.powers[1])
        return self.powers[n]


# ---------------------------------------------------------------------------
# Bivariate gcd over Q(i): primitive PRS in K[x][y]
# ---------------------------------------------------------------------------


def _to_rows(p: BiPoly) -> Dict[int, UniPoly]:
    """View p as a polynomial in y with coefficients in K[x]."""
    rows: Dict[int, Dict[int, GaussRational]] = {}
    for (i, j), c in p.items():
        rows.setdefault(j, {})[i] = c
    return {j: UniPoly(r.get(k, ZERO) for k in range(max(r) + 1)) for j, r in rows.items()}


def _from_rows(rows: Mapping[int, UniPoly]) -> BiPoly:
    out = {}
    for j, row in rows.items():
        for i, c in enumerate(row.coeffs):
            if c:
                out[(i, j)] = c
    return BiPoly._raw(out)


def _rows_content(rows: Mapping[int, UniPoly]) -> UniPoly:
    g = UniPoly()
    for row in rows.values():
        g = uni_gcd(g, row)
        if g.degree == 0:
            break
    return g


def _rows_div(rows: Mapping[int, UniPoly], d: UniPoly) -> Dict[int, UniPoly]:
    out = {}
    for j, row in rows.items():
        q, r = row.divmod(d)
        if r:
            raise ArithmeticError("content does not divide row")
        out[j] = q
    return out


def _prem(a: Dict[int, UniPoly], b: Dict[int, UniPoly]) -> Dict[int, UniPoly]:
    """Pseudo-remainder of a by b with respect to y."""
    db = max(b)
    lc = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        new: Dict[int, UniPoly] = {}
        for j, row in r.items():
            new[j] = row * lc
        for j, row in b.items():
            k = j + shift
            new[k] = new.get(k, UniPoly()) - row * lr
        r = {j: row for j, row in new.items() if row}
    return r


def bigcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Greatest common divisor in Q(i)[x, y], normalized to leading coefficient 1."""
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    ra, rb = _to_rows(a), _to_rows(b)
    ca, cb = _rows_content(ra), _rows_content(rb)
    content = uni_gcd(ca, cb)
    pa, pb = _rows_div(ra, ca), _rows_div(rb, cb)
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        if max(pb) == 0:
            # pb is a nonzero element of K[x] that is primitive, hence a unit
            prim: Dict[int, UniPoly] = {0: UniPoly.const(1)}
            break
        r = _prem(pa, pb)
        if not r:
            prim = pb
            break
        pa, pb = pb, _rows_div(r, _rows_content(r))
    result = _from_rows(prim) * _from_rows({0: content})
    return result.normalized()


def gcd_many(polys: Sequence[BiPoly]) -> BiPoly:
    g = BiPoly()
    for p in polys:
        g = bigcd(g, p)
        if g.is_constant() and not g.is_zero():
            return BiPoly.const(1)
    return g


def lowest_form(f: BiPoly) -> Tuple[int, BiPoly]:
    """Multiplicity at the origin and the lowest homogeneous part."""
    from .errors import NonvanishingAtOrigin, ZeroPolynomial

    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no lowest form")
    if f.constant_term():
        raise NonvanishingAtOrigin(f"{f} does not vanish at the origin")
    m = f.order()
    return m, f.homogeneous_part(m)
