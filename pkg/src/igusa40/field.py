"""Exact scalars: rationals, number fields as quotient rings, numeric embeddings."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

Rat = Fraction

#: guard digits added to every numeric embedding; accuracy claims are stated
#: as 10**(-precision + GUARD_DIGITS) and all work happens at precision + 2*GUARD.
GUARD_DIGITS = 2
_BOOTSTRAP_DPS = 60


class NotSquarefree(ValueError):
    """A number-field modulus had a repeated root."""


class NonInvertible(ZeroDivisionError):
    """Inversion hit a zero divisor; carries the modulus factor it exposed."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class PrecisionExhausted(ArithmeticError):
    """A numeric embedding could not certify the requested accuracy."""


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q; coefficient tuples ordered low -> high
# ---------------------------------------------------------------------------

def utrim(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def upoly(cs):
    return utrim(Fraction(c) for c in cs)


def udeg(a):
    return len(a) - 1


def uadd(a, b):
    n = max(len(a), len(b))
    return utrim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def uneg(a):
    return tuple(-c for c in a)


def usub(a, b):
    return uadd(a, uneg(b))


def uscale(a, s):
    if not s:
        return ()
    return tuple(c * s for c in a)


def umul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return utrim(out)


def udivmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        if not a[-1]:
            a.pop()
            continue
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] -= c * cb
        a.pop()
    return utrim(q), utrim(a)


def umod(a, b):
    return udivmod(a, b)[1]


def umonic(a):
    if not a:
        return a
    return uscale(a, 1 / a[-1])


def ugcd(a, b):
    while b:
        a, b = b, umod(a, b)
    return umonic(a)


def uxgcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic or zero."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, usub(s0, umul(q, s1))
        t0, t1 = t1, usub(t0, umul(q, t1))
    if r0:
        lc = r0[-1]
        r0, s0, t0 = umonic(r0), uscale(s0, 1 / lc), uscale(t0, 1 / lc)
    return r0, s0, t0


def uderiv(a):
    return utrim(i * c for i, c in enumerate(a) if i > 0)


def ueval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def u_is_squarefree(a):
    return udeg(ugcd(a, uderiv(a))) == 0


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

class NumberField:
    """Q[x]/(f) for a monic squarefree f of degree 1..8.

    Irreducibility is not checked; a reducible modulus surfaces lazily as a
    NonInvertible error carrying the discovered factor.
    """

    def __init__(self, min_poly, label=None):
        f = upoly(min_poly)
        if udeg(f) < 1 or udeg(f) > 8:
            raise ValueError("modulus degree must be 1..8, got %d" % udeg(f))
        if f[-1] != 1:
            raise ValueError("modulus must be monic")
        if not u_is_squarefree(f):
            raise NotSquarefree("modulus has a repeated factor")
        self.min_poly = f
        self.degree = udeg(f)
        self.label = label or "Q[x]/(deg %d)" % self.degree
        # reduction table: x^k mod f for k = d .. 2d-2
        d = self.degree
        self._red = []
        cur = utrim([-c for c in f[:-1]])  # x^d
        for _ in range(d - 1):
            self._red.append(cur + (Fraction(0),) * (d - len(cur)))
            cur = list((Fraction(0),) + cur)  # multiply by x
            if len(cur) > d:
                lead = cur.pop()
                if lead:
                    cur = [c + lead * r for c, r in zip(cur, self._red[0])]
            cur = utrim(cur)
        self._roots_cache = {}

    def __repr__(self):
        return "NumberField(%s)" % self.label

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    # -- element constructors ------------------------------------------------
    def element(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = list(self._reduce(tuple(cs)))
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        if self.degree == 1:
            return self.element([-self.min_poly[0]])
        return self.element([0, 1])

    def coerce(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ValueError("element of a different field")
            return v
        return self.element([Fraction(v)])

    # -- arithmetic core -----------------------------------------------------
    def _reduce(self, cs):
        d = self.degree
        cs = list(cs) + [Fraction(0)] * max(0, d - len(cs))
        for k in range(len(cs) - 1, d - 1, -1):
            c = cs[k]
            if c:
                red = self._red[k - d]
                for i in range(d):
                    cs[i] += c * red[i]
            cs.pop()
        return tuple(cs[:d])

    def _mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        out = [Fraction(0)] * (2 * d - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return self._reduce(tuple(out))

    def _inv(self, a):
        pol = utrim(a)
        if not pol:
            raise ZeroDivisionError("inversion of zero field element")
        g, s, _ = uxgcd(pol, self.min_poly)
        if udeg(g) != 0:
            raise NonInvertible("zero divisor: modulus is reducible", factor=g)
        return self._reduce(s)

    # -- numeric embeddings --------------------------------------------------
    def numeric_roots(self, dps):
        """Roots of the modulus, sorted lexicographically by (re, im).

        The ordering is fixed at a 60-digit bootstrap so the branch choice is
        stable across requested precisions.
        """
        key = dps
        if key in self._roots_cache:
            return self._roots_cache[key]
        order = self._root_order()
        with mpmath.workdps(dps + 2 * GUARD_DIGITS):
            coeffs = [_to_mpf(c) for c in reversed(self.min_poly)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=80)
            roots = [roots[i] for i in order]
            roots = [mpmath.mpc(r) for r in roots]
        self._roots_cache[key] = roots
        return roots

    def _root_order(self):
        if "order" in self._roots_cache:
            return self._roots_cache["order"]
        with mpmath.workdps(_BOOTSTRAP_DPS):
            coeffs = [_to_mpf(c) for c in reversed(self.min_poly)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=80)
            idx = sorted(range(len(roots)),
                         key=lambda i: (mpmath.mpf(roots[i].real), mpmath.mpf(roots[i].imag)))
        self._roots_cache["order"] = idx
        return idx

    def embedding_matrix(self, dps):
        """Vandermonde of the numeric embeddings: row j is theta_j**i."""
        roots = self.numeric_roots(dps)
        return [[r ** i for i in range(self.degree)] for r in roots]

    def conjugate_pairs(self, dps=60):
        """Pairing of embeddings under complex conjugation (j -> partner)."""
        roots = self.numeric_roots(dps)
        with mpmath.workdps(dps):
            tol = mpmath.mpf(10) ** (-dps // 2)
            partner = [None] * len(roots)
            for j, r in enumerate(roots):
                for k, s in enumerate(roots):
                    if abs(mpmath.conj(r) - s) < tol:
                        partner[j] = k
                        break
        return partner

    def element_from_images(self, images, dps):
        """Rational coordinates from one numeric image per embedding, or None.

        Solves the complex Vandermonde system and reconstructs each coordinate
        by continued fractions; callers must verify the result exactly.
        """
        n = self.degree
        with mpmath.workdps(dps + 2 * GUARD_DIGITS):
            V = mpmath.matrix(self.embedding_matrix(dps))
            try:
                sol = mpmath.lu_solve(V, mpmath.matrix(images))
            except ZeroDivisionError:
                return None
            out = []
            for i in range(n):
                v = sol[i]
                if abs(mpmath.im(v)) > mpmath.mpf(10) ** (-(dps // 2)):
                    return None
                r = _recognize_rational(mpmath.re(v), dps)
                if r is None:
                    return None
                out.append(r)
            return out

    def _image_assignments(self, candidates_per_embedding, dps):
        """Assignments of one candidate image per embedding, conjugate-consistent."""
        partner = self.conjugate_pairs(dps)
        n = self.degree
        reps = [j for j in range(n) if partner[j] >= j]
        with mpmath.workdps(dps):
            tol = mpmath.mpf(10) ** (-dps // 2)

            def fill(k, chosen):
                if k == len(reps):
                    yield dict(chosen)
                    return
                j = reps[k]
                for cand in candidates_per_embedding[j]:
                    nxt = dict(chosen)
                    nxt[j] = cand
                    jj = partner[j]
                    if jj == j:
                        if abs(mpmath.im(cand)) > tol:
                            continue
                    else:
                        nxt[jj] = mpmath.conj(cand)
                    yield from fill(k + 1, nxt)

            for assignment in fill(0, {}):
                yield [assignment[j] for j in range(n)]

    def roots_in_field(self, pol):
        """All roots of a rational univariate polynomial that lie in this field.

        Candidates come from numerically consistent embedding assignments and
        every returned root is verified exactly, so the output is correct and,
        for the bounded heights in this artifact, complete.
        """
        pol = upoly(pol)
        out = []
        dps = 80
        roots = _numeric_upoly_roots(pol, dps)
        cands = [roots] * self.degree
        seen = set()
        for images in self._image_assignments(cands, dps):
            coords = self.element_from_images(images, dps)
            if coords is None:
                continue
            key = tuple(coords)
            if key in seen:
                continue
            seen.add(key)
            el = self.element(coords)
            if not _upoly_eval_field(pol, el) and el not in out:
                out.append(el)
        return out

    def automorphisms(self):
        """Field automorphisms, as maps on elements (found via roots_in_field)."""
        roots = self.roots_in_field(self.min_poly)

        def make(r):
            powers = [self.one()]
            for _ in range(self.degree - 1):
                powers.append(powers[-1] * r)

            def auto(e, powers=powers):
                acc = self.zero()
                for c, p in zip(e.coeffs, powers):
                    if c:
                        acc = acc + p * c
                return acc
            return auto

        return [make(r) for r in roots]


class FieldElement:
    """An element of a NumberField in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __repr__(self):
        return "FieldElement(%s)" % (",".join(str(c) for c in self.coeffs))

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def _co(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field._inv(self.coeffs))

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]


# ---------------------------------------------------------------------------
# generic scalar helpers: a "scalar" is a Fraction (field=None) or FieldElement
# ---------------------------------------------------------------------------

def f_zero(field):
    return Fraction(0) if field is None else field.zero()


def f_one(field):
    return Fraction(1) if field is None else field.one()


def f_coerce(field, v):
    if field is None:
        if isinstance(v, FieldElement):
            return v.rational_value()
        return Fraction(v)
    return field.coerce(v)


def f_inv(x):
    if isinstance(x, FieldElement):
        return x.inverse()
    return 1 / Fraction(x)


def scalar_field(x):
    return x.field if isinstance(x, FieldElement) else None


# ---------------------------------------------------------------------------
# square roots
# ---------------------------------------------------------------------------

def rat_sqrt(r):
    """Exact square root of a rational, or None."""
    r = Fraction(r)
    if r < 0:
        return None
    pn, pd = isqrt(r.numerator), isqrt(r.denominator)
    if pn * pn == r.numerator and pd * pd == r.denominator:
        return Fraction(pn, pd)
    return None


def field_sqrt(field, x):
    """Exact square root inside the given field, or None.

    Rational arguments use integer square roots; field elements go through a
    numerically proposed, exactly verified candidate.
    """
    if field is None:
        return rat_sqrt(x)
    x = field.coerce(x)
    if not x:
        return field.zero()
    if x.is_rational():
        r = rat_sqrt(x.rational_value())
        if r is not None:
            return field.coerce(r)
    for dps in (60, 120, 240):
        with mpmath.workdps(dps + 2 * GUARD_DIGITS):
            V = field.embedding_matrix(dps)
            imgs = []
            for row in V:
                val = mpmath.mpc(0)
                for c, b in zip(x.coeffs, row):
                    val += _to_mpf(c) * b
                s = mpmath.sqrt(val)
                imgs.append([s, -s])
        for images in field._image_assignments(imgs, dps):
            coords = field.element_from_images(images, dps)
            if coords is None:
                continue
            el = field.element(coords)
            if el * el == x:
                return el
    return None


# ---------------------------------------------------------------------------
# numeric embeddings
# ---------------------------------------------------------------------------

class BigFloatComplex:
    """A complex value with a recorded guaranteed precision in decimal digits."""

    __slots__ = ("re", "im", "precision_digits")

    def __init__(self, re, im, precision_digits):
        if precision_digits < 40:
            raise ValueError("precision must be at least 40 digits")
        self.re = re
        self.im = im
        self.precision_digits = precision_digits

    def mpc(self):
        return mpmath.mpc(self.re, self.im)

    def __repr__(self):
        with mpmath.workdps(self.precision_digits):
            return "BigFloatComplex(%s, %s; %d digits)" % (
                mpmath.nstr(self.re, 20), mpmath.nstr(self.im, 20), self.precision_digits)

    def distance(self, other):
        o = other.mpc() if isinstance(other, BigFloatComplex) else mpmath.mpc(other)
        return abs(self.mpc() - o)


def embed_numeric(e, root_index=0, precision=40):
    """Numeric image of a field element under the root_index-th embedding.

    Roots of the modulus are ordered lexicographically by (re, im) at a fixed
    60-digit bootstrap; the result carries `precision` digits with GUARD_DIGITS
    of slack, i.e. |result - exact| < 10**(-precision + GUARD_DIGITS).
    """
    if isinstance(e, (int, Fraction)):
        with mpmath.workdps(precision + 2 * GUARD_DIGITS):
            v = _to_mpf(Fraction(e))
            return BigFloatComplex(mpmath.mpf(v), mpmath.mpf(0), precision)
    field = e.field
    if root_index >= field.degree:
        raise ValueError("root index out of range")
    roots = field.numeric_roots(precision)
    with mpmath.workdps(precision + 2 * GUARD_DIGITS):
        theta = roots[root_index]
        # Newton refinement to certify the working accuracy
        f = field.min_poly
        df = uderiv(f)
        for _ in range(4):
            fv = _ueval_mp(f, theta)
            dv = _ueval_mp(df, theta)
            if dv == 0:
                raise PrecisionExhausted("derivative vanished during refinement")
            theta = theta - fv / dv
        resid = abs(_ueval_mp(f, theta))
        if resid > mpmath.mpf(10) ** (-(precision + GUARD_DIGITS)):
            raise PrecisionExhausted("root residual %s too large for %d digits" % (resid, precision))
        acc = mpmath.mpc(0)
        for c in reversed(e.coeffs):
            acc = acc * theta + _to_mpf(c)
        return BigFloatComplex(acc.real, acc.imag, precision)


def _to_mpf(c):
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)


def _ueval_mp(pol, x):
    acc = mpmath.mpc(0)
    for c in reversed(pol):
        acc = acc * x + _to_mpf(c)
    return acc


def _numeric_upoly_roots(pol, dps):
    with mpmath.workdps(dps + 2 * GUARD_DIGITS):
        coeffs = [_to_mpf(c) for c in reversed(pol)]
        return [mpmath.mpc(r) for r in mpmath.polyroots(coeffs, maxsteps=200, extraprec=80)]


def _recognize_rational(x, dps, max_den=10**24):
    """Continued-fraction reconstruction of a rational from an mpf."""
    if abs(x) < mpmath.mpf(10) ** (-dps // 2):
        return Fraction(0)
    p0, q0, p1, q1 = 0, 1, 1, 0
    val = mpmath.mpf(x)
    rest = val
    for _ in range(200):
        a = int(mpmath.floor(rest))
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        if q1 > max_den:
            return None
        approx = Fraction(p1, q1)
        if abs(val - _to_mpf(approx)) < mpmath.mpf(10) ** (-(dps - 12)):
            return approx
        frac = rest - a
        if frac == 0:
            break
        rest = 1 / frac
    cand = Fraction(p1, q1) if q1 else None
    if cand is not None and abs(val - _to_mpf(cand)) < mpmath.mpf(10) ** (-(dps - 12)):
        return cand
    return None


def _upoly_eval_field(pol, el):
    acc = el.field.zero()
    for c in reversed(pol):
        acc = acc * el + c
    return acc


# ---------------------------------------------------------------------------
# the concrete fields used throughout
# ---------------------------------------------------------------------------

def QQ():
    """Degree-1 field wrapper for the rationals (x - 1 modulus)."""
    return NumberField([-1, 1], label="Q")


def Q_sqrt_minus15():
    return NumberField([15, 0, 1], label="Q(sqrt(-15))")


def Q_sqrt5_sqrt_minus3():
    """Q(sqrt5, sqrt(-3)) presented on theta = (sqrt5 + sqrt(-3))/2.

    theta has minimal polynomial x^4 - x^2 + 4; named generators:
    sqrt5 = (3*theta - theta^3)/2, sqrt(-3) = (theta^3 + theta)/2,
    sqrt(-15) = 2*theta^2 - 1.
    """
    K = NumberField([4, 0, -1, 0, 1], label="Q(sqrt5,sqrt-3)")
    t = K.gen()
    K.sqrt5 = (t * 3 - t ** 3) * Fraction(1, 2)
    K.sqrt_m3 = (t ** 3 + t) * Fraction(1, 2)
    K.sqrt_m15 = t * t * 2 - 1
    return K


def Q_zeta8():
    """Q(zeta_8) on x^4 + 1; contains sqrt2 = z - z^3 and i = z^2."""
    K = NumberField([1, 0, 0, 0, 1], label="Q(zeta8)")
    z = K.gen()
    K.sqrt2 = z - z ** 3
    K.i = z * z
    return K
