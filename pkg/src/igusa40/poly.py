"""Sparse multivariate polynomials over Q or a number field.

Calculus, substitution, subresultant elimination, exact square roots and the
small tower-building helpers everything downstream leans on.
"""

from __future__ import annotations

from fractions import Fraction

from .field import (FieldElement, NotSquarefree, NumberField, f_coerce, f_inv,
                    f_zero, field_sqrt, rat_sqrt, u_is_squarefree, upoly)
from .linalg import mat_nullspace

__all__ = [
    "MultiPoly", "LinearChange", "NotASquare", "resultant", "sylvester_resultant",
    "gcd_univariate", "poly_sqrt", "mp_gcd", "extend_by_sqrt", "element_min_poly",
    "parse_poly",
]


class NotASquare(ValueError):
    pass


def _glex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient, canonical."""

    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars, terms=None, field=None):
        self.nvars = nvars
        self.field = field
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = f_coerce(field, c)
                if c:
                    e = tuple(int(v) for v in exp)
                    if len(e) != nvars:
                        raise ValueError("exponent arity mismatch")
                    if e in clean:
                        c = clean[e] + c
                        if c:
                            clean[e] = c
                        else:
                            del clean[e]
                    else:
                        clean[e] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars, field=None):
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, nvars, c, field=None):
        return cls(nvars, {(0,) * nvars: c}, field)

    @classmethod
    def variable(cls, i, nvars, field=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, field)

    @classmethod
    def variables(cls, nvars, field=None):
        return [cls.variable(i, nvars, field) for i in range(nvars)]

    @classmethod
    def from_univariate(cls, coeffs, nvars=1, var=0, field=None):
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[var] = i
            terms[tuple(e)] = c
        return cls(nvars, terms, field)

    # -- basic structure -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.nvars == other.nvars and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == MultiPoly.constant(self.nvars, other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def leading(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_glex_key)
        return exp, self.terms[exp]

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return used

    # -- ring operations -----------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = MultiPoly.constant(self.nvars, other, self.field)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.terms, out.field = self.nvars, terms, self.field
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.field = self.nvars, self.field
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = MultiPoly.constant(self.nvars, other, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            c0 = f_coerce(self.field, other)
            out = MultiPoly.__new__(MultiPoly)
            out.nvars, out.field = self.nvars, self.field
            out.terms = {e: c * c0 for e, c in self.terms.items()} if c0 else {}
            return out
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = acc.get(e)
                if s is None:
                    acc[e] = c
                else:
                    s = s + c
                    if s:
                        acc[e] = s
                    else:
                        del acc[e]
        out = MultiPoly.__new__(MultiPoly)
        out.nvars, out.field = self.nvars, self.field
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        acc = MultiPoly.constant(self.nvars, 1, self.field)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    # -- evaluation / calculus -------------------------------------------
    def eval(self, point):
        """Exact evaluation at a vector of scalars."""
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        acc = f_zero(self.field)
        pows = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            if k == 0:
                return None
            got = pows[i].get(k)
            if got is None:
                got = point[i] ** k
                pows[i][k] = got
            return got

        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * pw(i, k)
            acc = acc + v
        return acc

    def partial(self, var):
        terms = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = list(e)
                ne[var] = k - 1
                terms[tuple(ne)] = c * k
        return MultiPoly(self.nvars, terms, self.field)

    def grad(self):
        return [self.partial(i) for i in range(self.nvars)]

    def substitute(self, images):
        """Exact composition; images share a ring."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        tgt = images[0]
        one = MultiPoly.constant(tgt.nvars, 1, tgt.field)
        pows = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            got = pows[i].get(k)
            if got is None:
                got = images[i] ** k
                pows[i][k] = got
            return got

        acc = MultiPoly.zero(tgt.nvars, tgt.field)
        for e, c in self.terms.items():
            t = one * c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            acc = acc + t
        return acc

    def to_field(self, field):
        """Lift a Q-coefficient polynomial into a number field's ring."""
        if self.field == field:
            return self
        if self.field is not None:
            raise ValueError("can only lift from Q")
        return MultiPoly(self.nvars, {e: field.coerce(c) for e, c in self.terms.items()}, field)

    def strip_content(self):
        """Divide a Q-polynomial by its rational content (sign-normalized)."""
        if self.field is not None or not self.terms:
            return self
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        content = Fraction(num, den)
        _, lead = self.leading()
        if lead < 0:
            content = -content
        return self * (1 / content)

    # -- text form -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            bits = [_coeff_str(c)]
            for i, k in enumerate(e):
                if k:
                    bits.append("x%d^%d" % (i, k))
            parts.append("*".join(bits))
        return " + ".join(parts)

    def __repr__(self):
        return "MultiPoly(%s)" % self


def _coeff_str(c):
    if isinstance(c, FieldElement):
        return "[" + ",".join(str(v) for v in c.coeffs) + "]"
    return str(c)


def parse_poly(text, nvars, field=None):
    """Parse the printer's format back; round-trips exactly."""
    text = text.strip()
    if text == "0":
        return MultiPoly.zero(nvars, field)
    terms = {}
    for chunk in text.split(" + "):
        bits = chunk.split("*")
        coeff_txt = bits[0]
        if coeff_txt.startswith("["):
            coeffs = [Fraction(v) for v in coeff_txt[1:-1].split(",")]
            c = field.element(coeffs)
        else:
            c = Fraction(coeff_txt)
        e = [0] * nvars
        for b in bits[1:]:
            name, k = b.split("^")
            e[int(name[1:])] = int(k)
        e = tuple(e)
        terms[e] = terms.get(e, f_zero(field)) + c
    return MultiPoly(nvars, terms, field)


class LinearChange:
    """Invertible linear change of coordinates: old_i = sum_j m[i][j] * new_j."""

    def __init__(self, matrix):
        self.matrix = matrix
        det, inv = matrix.det_and_inverse()
        if inv is None:
            raise ValueError("change of coordinates must be invertible")
        self._inv = inv

    def apply(self, p):
        n = self.matrix.rows
        if p.nvars != n:
            raise ValueError("arity mismatch")
        imgs = []
        for i in range(n):
            terms = {}
            for j in range(n):
                c = self.matrix.entries[i][j]
                if c:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = c
            imgs.append(MultiPoly(n, terms, p.field))
        return p.substitute(imgs)

    def inverse(self):
        return LinearChange(self._inv)


# ---------------------------------------------------------------------------
# univariate views (coefficients are polynomials in the remaining variables)
# ---------------------------------------------------------------------------

def _as_univar(p, var):
    """List of MultiPoly coefficients by degree in var (var-exponent zeroed)."""
    d = p.degree_in(var)
    out = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        k = e[var]
        ne = list(e)
        ne[var] = 0
        out[k][tuple(ne)] = c
    return [MultiPoly(p.nvars, t, p.field) for t in out]


def _from_univar(coeffs, var):
    if not coeffs:
        raise ValueError("empty coefficient list")
    nv, fld = coeffs[0].nvars, coeffs[0].field
    terms = {}
    for k, c in enumerate(coeffs):
        for e, v in c.terms.items():
            ne = list(e)
            ne[var] = k
            terms[tuple(ne)] = v
    return MultiPoly(nv, terms, fld)


def _utrim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def mp_div_exact(a, b):
    """Exact multivariate division; raises if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return a
    quot = MultiPoly.zero(a.nvars, a.field)
    rem = a
    be, bc = b.leading()
    bc_inv = f_inv(bc)
    while rem:
        re, rc = rem.leading()
        qe = tuple(x - y for x, y in zip(re, be))
        if any(v < 0 for v in qe):
            raise ValueError("inexact division")
        qc = rc * bc_inv
        mono = MultiPoly(a.nvars, {qe: qc}, a.field)
        quot = quot + mono
        rem = rem - mono * b
    return quot


def _prem(A, B, var_nvars_field):
    """Pseudo-remainder of univariate coefficient lists: lc(B)^(dA-dB+1) A mod B."""
    del var_nvars_field
    R = list(A)
    dB = len(B) - 1
    lcB = B[-1]
    scale_left = (len(R) - 1 - dB) + 1
    while R and len(R) - 1 >= dB:
        if not R[-1]:
            R.pop()
            continue
        lead = R[-1]
        R = [c * lcB for c in R]
        scale_left -= 1
        k = len(R) - 1 - dB
        for i, bc in enumerate(B):
            R[k + i] = R[k + i] - lead * bc
        R.pop()
        _utrim(R)
    if R and scale_left > 0:
        f = lcB ** scale_left
        R = [c * f for c in R]
    return R


def resultant(p, q, var):
    """Resultant of p and q with respect to one variable.

    Subresultant PRS; the sign convention matches the Sylvester determinant
    (verified by the small-case oracle in the tests).
    """
    if p.nvars != q.nvars or p.field != q.field:
        raise ValueError("mixed rings")
    nv, fld = p.nvars, p.field
    if not p or not q:
        return MultiPoly.zero(nv, fld)
    A = _as_univar(p, var)
    B = _as_univar(q, var)
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0 and dB == 0:
        return MultiPoly.constant(nv, 1, fld)
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    sign = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if (dA * dB) % 2 == 1:
            sign = -sign
    one = MultiPoly.constant(nv, 1, fld)
    g, h = one, one
    s = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B, (nv, fld))
        A = B
        if not R:
            return MultiPoly.zero(nv, fld)
        denom = g * (h ** delta)
        B = [mp_div_exact(c, denom) for c in R]
        g = A[-1]
        if delta > 0:
            h = mp_div_exact(g ** delta, h ** (delta - 1))
        dB = len(B) - 1
        if dB == 0:
            dA = len(A) - 1
            num = B[0] ** dA
            res = mp_div_exact(num, h ** (dA - 1)) if dA > 1 else num
            return res * (s * sign)


def sylvester_resultant(p, q, var):
    """Sylvester-determinant resultant: the independent small-case oracle."""
    nv, fld = p.nvars, p.field
    A = _as_univar(p, var)
    B = _as_univar(q, var)
    m, n = len(A) - 1, len(B) - 1
    if m < 0 or n < 0:
        return MultiPoly.zero(nv, fld)
    if m == 0 and n == 0:
        return MultiPoly.constant(nv, 1, fld)
    if m == 0:
        return A[0] ** n
    if n == 0:
        return B[0] ** m
    size = m + n
    zero = MultiPoly.zero(nv, fld)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    return _poly_det_bareiss(rows)


def _poly_det_bareiss(rows):
    """Fraction-free determinant of a small matrix of polynomials."""
    n = len(rows)
    m = [list(r) for r in rows]
    nv, fld = m[0][0].nvars, m[0][0].field
    prev = MultiPoly.constant(nv, 1, fld)
    sign = 1
    for k in range(n - 1):
        if not m[k][k]:
            sw = None
            for i in range(k + 1, n):
                if m[i][k]:
                    sw = i
                    break
            if sw is None:
                return MultiPoly.zero(nv, fld)
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = mp_div_exact(num, prev)
            m[i][k] = MultiPoly.zero(nv, fld)
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


# ---------------------------------------------------------------------------
# gcds
# ---------------------------------------------------------------------------

def gcd_univariate(p, q):
    """Monic gcd of two univariate polynomials over a field."""
    used = p.variables_used() | q.variables_used()
    if len(used) > 1:
        raise ValueError("inputs are not univariate")
    var = used.pop() if used else 0
    a = [c.terms.get((0,) * p.nvars, f_zero(p.field)) for c in _as_univar(p, var)]
    b = [c.terms.get((0,) * q.nvars, f_zero(q.field)) for c in _as_univar(q, var)]

    def trim(v):
        while v and not v[-1]:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = f_inv(b[-1])
        bm = [c * inv for c in b]
        r = list(a)
        while len(r) >= len(bm) and trim(r):
            if not r[-1]:
                r.pop()
                continue
            k = len(r) - len(bm)
            lead = r[-1]
            for i, c in enumerate(bm):
                r[k + i] = r[k + i] - lead * c
            r.pop()
        a, b = b, trim(r)
    if not a:
        return MultiPoly.zero(p.nvars, p.field)
    inv = f_inv(a[-1])
    a = [c * inv for c in a]
    return MultiPoly.from_univariate(a, p.nvars, var, p.field)


def mp_gcd(p, q):
    """Gcd of multivariate polynomials over a field via primitive PRS.

    Normalized so the leading coefficient (graded-lex) is one.
    """
    if not p:
        return _monicize(q)
    if not q:
        return _monicize(p)
    used = sorted(p.variables_used() | q.variables_used())
    if not used:
        return MultiPoly.constant(p.nvars, 1, p.field)
    if len(used) == 1:
        return gcd_univariate(p, q)
    var = used[-1]

    def content_pp(f):
        cs = _as_univar(f, var)
        cont = MultiPoly.zero(f.nvars, f.field)
        for c in cs:
            cont = mp_gcd(cont, c)
        return cont, [mp_div_exact(c, cont) for c in cs]

    ca, A = content_pp(p)
    cb, B = content_pp(q)
    cont = mp_gcd(ca, cb)
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _prem(A, B, (p.nvars, p.field))
        if not R:
            break
        rc = MultiPoly.zero(p.nvars, p.field)
        for c in R:
            rc = mp_gcd(rc, c)
        A, B = B, [mp_div_exact(c, rc) for c in R]
        if len(B) == 1:
            return _monicize(cont)
    g = _from_univar(B, var)
    gc, Bpp = content_pp(g)
    return _monicize(cont * _from_univar(Bpp, var))


def _monicize(p):
    if not p:
        return p
    _, lc = p.leading()
    return p * f_inv(lc)


def squarefree_part_univariate(p):
    d = None
    for v in p.variables_used():
        d = v
    if d is None:
        return p
    return mp_div_exact(p, gcd_univariate(p, p.partial(d)))


# ---------------------------------------------------------------------------
# exact square roots
# ---------------------------------------------------------------------------

def poly_sqrt(p):
    """Exact square root over the coefficient field, or raise NotASquare."""
    if not p:
        raise ValueError("square root of the zero polynomial")
    deg = p.degree()
    le, lc = p.leading()
    if any(v % 2 for v in le):
        raise NotASquare("leading monomial is not a square")
    rc = field_sqrt(p.field, lc)
    if rc is None:
        raise NotASquare("leading coefficient is not a square in the field")
    half = tuple(v // 2 for v in le)
    root = MultiPoly(p.nvars, {half: rc}, p.field)
    two_rc_inv = f_inv(rc + rc)
    resid = p - root * root
    # peel terms in decreasing graded-lex order; each step is forced
    guard = (len(p.terms) + 4) * (deg + 2) ** 2 + 16
    while resid:
        guard -= 1
        if guard < 0:
            raise NotASquare("square-root iteration failed to terminate")
        re, rcov = resid.leading()
        qe = tuple(x - y for x, y in zip(re, half))
        if any(v < 0 for v in qe) or _glex_key(qe) >= _glex_key(half):
            raise NotASquare("residual term not reachable")
        term = MultiPoly(p.nvars, {qe: rcov * two_rc_inv}, p.field)
        resid = resid - term * (root * 2) - term * term
        root = root + term
    if root * root == p:
        return root
    raise NotASquare("verification failed")


# ---------------------------------------------------------------------------
# field towers and minimal polynomials
# ---------------------------------------------------------------------------

def element_min_poly(e):
    """Monic minimal polynomial over Q of a number-field element (as tuple)."""
    K = e.field
    d = K.degree
    rows = []
    pw = K.one()
    vecs = [tuple(pw.coeffs)]
    for _ in range(d):
        pw = pw * e
        vecs.append(tuple(pw.coeffs))
    # first linear dependence among 1, e, e^2, ...
    for k in range(1, d + 1):
        m = [[vecs[i][j] for i in range(k + 1)] for j in range(d)]
        null = mat_nullspace(m)
        for v in null:
            if v[k]:
                inv = 1 / v[k]
                return tuple(Fraction(c * inv) for c in v)
    raise RuntimeError("no minimal polynomial found (impossible)")


def extend_by_sqrt(K, d):
    """Smallest practical field containing K and a square root of d.

    Returns (L, embed, sqrt_el) where embed maps K-elements into L and
    sqrt_el**2 == embed(d). If d is already a square in K, L is K itself.
    """
    if K is None:
        r = rat_sqrt(d)
        if r is not None:
            return None, (lambda x: Fraction(x)), r
        L = NumberField([-Fraction(d), 0, 1], label="Q(sqrt(%s))" % d)
        return L, (lambda x, L=L: L.coerce(x)), L.gen()
    d = K.coerce(d)
    direct = field_sqrt(K, d)
    if direct is not None:
        return K, (lambda x: x), direct
    dpol = tuple(d.coeffs)  # d as polynomial in the generator
    for k in range(0, 6):
        # gamma = sqrt(d) + k*theta; min poly via a bivariate resultant
        nv = 2
        z = MultiPoly.variable(0, nv)
        x = MultiPoly.variable(1, nv)
        mK = MultiPoly.zero(nv)
        for i, c in enumerate(K.min_poly):
            mK = mK + MultiPoly(nv, {(i, 0): c})
        dz = MultiPoly.zero(nv)
        for i, c in enumerate(dpol):
            dz = dz + MultiPoly(nv, {(i, 0): c})
        g = (x - z * k) * (x - z * k) - dz
        res = resultant(mK, g, 0)
        coeffs = [Fraction(0)] * (res.degree_in(1) + 1)
        for e, c in res.terms.items():
            coeffs[e[1]] = Fraction(c)
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        if not u_is_squarefree(upoly(coeffs)):
            continue
        try:
            L = NumberField(coeffs, label="%s(sqrt)" % (K.label,))
        except NotSquarefree:
            continue
        for theta_img in L.roots_in_field(K.min_poly):
            powers = [L.one()]
            for _ in range(K.degree - 1):
                powers.append(powers[-1] * theta_img)

            def embed(el, powers=powers, L=L):
                acc = L.zero()
                for c, p in zip(el.coeffs, powers):
                    if c:
                        acc = acc + p * c
                return acc

            cand = L.gen() - theta_img * k
            if cand * cand == embed(d):
                return L, embed, cand
    raise RuntimeError("could not build a square-root extension")
