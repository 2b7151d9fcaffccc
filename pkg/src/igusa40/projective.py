"""Projective points, lines, hypersurfaces and complete intersections.

Singularity detection, node classification, gradient/dual maps and the
double-curve (trope) certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import f_inv, f_one, f_zero, scalar_field
from .linalg import ExactMatrix, mat_nullspace, mat_rref, mat_vec
from .poly import MultiPoly, NotASquare, mp_div_exact, mp_gcd, poly_sqrt, resultant


class PointNotOnSurface(ValueError):
    pass


class GradientVanishes(ValueError):
    pass


class BothGradientsVanish(ValueError):
    pass


class SingularQuadric(ValueError):
    pass


class EliminationDegenerate(ValueError):
    pass


NODE = "node"
DEGENERATE = "degenerate"


# ---------------------------------------------------------------------------
# points and lines
# ---------------------------------------------------------------------------

class ProjPoint:
    """Homogeneous point, normalized so its first nonzero coordinate is 1."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field=None):
        coords = list(coords)
        lead = None
        for c in coords:
            if c:
                lead = c
                break
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        inv = f_inv(lead)
        self.coords = tuple(c * inv for c in coords)
        self.field = field

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ProjPoint(%s)" % (":".join(str(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def permuted(self, perm):
        """Coordinates pushed through a permutation: new[i] = old[perm[i]]."""
        return ProjPoint([self.coords[perm[i]] for i in range(len(perm))], self.field)

    def mapped(self, auto):
        """Image under a field automorphism applied coordinatewise."""
        return ProjPoint([auto(c) if not isinstance(c, (int, Fraction)) else c
                          for c in self.coords], self.field)

    def transformed(self, matrix_rows, field=None):
        return ProjPoint(mat_vec(matrix_rows, list(self.coords), field), field or self.field)


class ProjLine:
    """Line spanned by two independent points; parametrized s*P + t*Q."""

    __slots__ = ("p", "q", "field")

    def __init__(self, p, q, field=None):
        self.p = p
        self.q = q
        self.field = field if field is not None else p.field
        rows = [list(p.coords), list(q.coords)]
        _, rank, _, _ = mat_rref(rows, self.field)
        if rank != 2:
            raise ValueError("line basis points are not independent")

    def point_at(self, s, t):
        return ProjPoint([s * a + t * b for a, b in zip(self.p.coords, self.q.coords)],
                         self.field)

    def contains(self, point):
        rows = [list(self.p.coords), list(self.q.coords), list(point.coords)]
        _, rank, _, _ = mat_rref(rows, self.field)
        return rank == 2

    def restrict(self, poly):
        """Binary form in (s, t): the polynomial pulled back to the line."""
        nv = poly.nvars
        field = poly.field
        imgs = []
        for i in range(nv):
            imgs.append(MultiPoly(2, {(1, 0): self.p.coords[i], (0, 1): self.q.coords[i]},
                                  field))
        return poly.substitute(imgs)

    def __repr__(self):
        return "ProjLine(%r, %r)" % (self.p, self.q)


# ---------------------------------------------------------------------------
# hypersurfaces and complete intersections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hypersurface:
    equation: MultiPoly
    ambient_dim: int

    def __post_init__(self):
        if not self.equation:
            raise ValueError("hypersurface equation is zero")
        if not self.equation.is_homogeneous():
            raise ValueError("hypersurface equation must be homogeneous")
        if self.equation.nvars != self.ambient_dim + 1:
            raise ValueError("variable count does not match ambient dimension")

    def degree(self):
        return self.equation.degree()


@dataclass(frozen=True)
class CompleteIntersectionSurface:
    quartic: Hypersurface
    quadric: Hypersurface

    def __post_init__(self):
        if self.quartic.degree() != 4 or self.quadric.degree() != 2:
            raise ValueError("expected degrees (4, 2)")
        if self.quartic.ambient_dim != 4 or self.quadric.ambient_dim != 4:
            raise ValueError("expected surfaces in P^4")
        try:
            mp_div_exact(self.quartic.equation, self.quadric.equation)
        except (ValueError, ZeroDivisionError):
            return
        raise ValueError("quadric divides the quartic")

    def equations(self):
        return self.quartic.equation, self.quadric.equation


def quadric_gram(q):
    """Symmetric Gram matrix rows of a quadratic form (exact, halves off-diagonal)."""
    n = q.nvars
    field = q.field
    half = Fraction(1, 2)
    g = [[f_zero(field) for _ in range(n)] for _ in range(n)]
    for e, c in q.terms.items():
        idx = [i for i, v in enumerate(e) for _ in range(v)]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        i, j = idx
        if i == j:
            g[i][i] = g[i][i] + c
        else:
            g[i][j] = g[i][j] + c * half
            g[j][i] = g[j][i] + c * half
    return g


def gram_quadric(g, field=None):
    n = len(g)
    terms = {}
    for i in range(n):
        for j in range(i, n):
            c = g[i][j] if i == j else g[i][j] + g[j][i]
            if c:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = terms.get(tuple(e), f_zero(field)) + c
    return MultiPoly(n, terms, field)


# ---------------------------------------------------------------------------
# singularity detection
# ---------------------------------------------------------------------------

def _jacobian_at(X, p):
    f, g = X.equations()
    field = p.field
    pt = list(p.coords)
    if f.eval(pt) or g.eval(pt):
        raise PointNotOnSurface("point does not satisfy both equations")
    jf = [f.partial(i).eval(pt) for i in range(5)]
    jg = [g.partial(i).eval(pt) for i in range(5)]
    return jf, jg


def singular_rank(X, p):
    """Rank of the 2x5 Jacobian at a point of the intersection (2 = smooth)."""
    jf, jg = _jacobian_at(X, p)
    _, rank, _, _ = mat_rref([jf, jg], p.field)
    return rank


def classify_node(X, p):
    """Hessian test at a rank-1 singular point: NODE or DEGENERATE.

    The singular combination of the two equations is restricted to the tangent
    space of the remaining smooth equation inside the affine chart where the
    first nonzero coordinate of p equals 1; NODE iff that 3x3 form is
    nonsingular.
    """
    f, g = X.equations()
    field = p.field
    jf, jg = _jacobian_at(X, p)
    f_zero_grad = not any(jf)
    g_zero_grad = not any(jg)
    if f_zero_grad and g_zero_grad:
        raise BothGradientsVanish("rank 0: worse than a node")
    _, rank, _, _ = mat_rref([jf, jg], field)
    if rank == 2:
        raise ValueError("smooth point: nothing to classify")
    fq = f if f.field == field else f.to_field(field)
    gq = g if g.field == field else g.to_field(field)
    if g_zero_grad:
        sing_eq, smooth_eq, smooth_grad = gq, fq, jf
    elif f_zero_grad:
        sing_eq, smooth_eq, smooth_grad = fq, gq, jg
    else:
        i0 = next(i for i, v in enumerate(jg) if v)
        c = jf[i0] * f_inv(jg[i0])
        sing_eq = fq - gq * c
        smooth_eq, smooth_grad = gq, jg
    pt = list(p.coords)
    chart = next(i for i, v in enumerate(pt) if v)
    # tangent directions of the smooth equation inside the chart
    dirs = []
    free = [i for i in range(5) if i != chart]
    pivot = None
    for i in free:
        if smooth_grad[i]:
            pivot = i
            break
    if pivot is None:
        raise BothGradientsVanish("smooth equation is singular in the chart")
    inv = f_inv(smooth_grad[pivot])
    for i in free:
        if i == pivot:
            continue
        v = [f_zero(field)] * 5
        v[i] = f_one(field)
        v[pivot] = -smooth_grad[i] * inv
        dirs.append(v)
    hess = [[sing_eq.partial(i).partial(j).eval(pt) for j in range(5)] for i in range(5)]
    b = [[_quad_form(hess, u, v, field) for v in dirs] for u in dirs]
    det, _ = ExactMatrix(b, field).det_and_inverse()
    return NODE if det else DEGENERATE


def _quad_form(m, u, v, field):
    acc = f_zero(field)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                acc = acc + ui * m[i][j] * vj
    return acc


def hypersurface_node_test(F, p):
    """Node test for a singular point of a single hypersurface."""
    eq = F.equation if isinstance(F, Hypersurface) else F
    field = p.field
    eqf = eq if eq.field == field else eq.to_field(field)
    pt = list(p.coords)
    if eqf.eval(pt):
        raise PointNotOnSurface("point not on the hypersurface")
    n = eqf.nvars
    grad = [eqf.partial(i).eval(pt) for i in range(n)]
    if any(grad):
        raise ValueError("smooth point of the hypersurface")
    chart = next(i for i, v in enumerate(pt) if v)
    idx = [i for i in range(n) if i != chart]
    hess = [[eqf.partial(i).partial(j).eval(pt) for j in idx] for i in idx]
    det, _ = ExactMatrix(hess, field).det_and_inverse()
    return NODE if det else DEGENERATE


# ---------------------------------------------------------------------------
# dual maps
# ---------------------------------------------------------------------------

def gradient_map(F, p):
    """Dual-space image (dF/dx0 : ... : dF/dxn) of a smooth hypersurface point."""
    eq = F.equation if isinstance(F, Hypersurface) else F
    field = p.field
    eqf = eq if eq.field == field else eq.to_field(field)
    pt = list(p.coords)
    grad = [eqf.partial(i).eval(pt) for i in range(eqf.nvars)]
    if not any(grad):
        raise GradientVanishes("gradient vanishes: singular point")
    return ProjPoint(grad, field)


def dual_quadric(Q):
    """The quadric with inverse Gram matrix; double dual returns the original."""
    eq = Q.equation if isinstance(Q, Hypersurface) else Q
    g = quadric_gram(eq)
    det, inv = ExactMatrix(g, eq.field).det_and_inverse()
    if inv is None:
        raise SingularQuadric("Gram matrix is singular")
    dual = gram_quadric(inv.row_list(), eq.field)
    if eq.field is None:
        dual = dual.strip_content()
    return Hypersurface(dual, eq.nvars - 1)


# ---------------------------------------------------------------------------
# lines against hypersurfaces
# ---------------------------------------------------------------------------

def line_in_singular_locus(F, L):
    """True iff every partial of F vanishes identically along the line."""
    eq = F.equation if isinstance(F, Hypersurface) else F
    eqf = eq if eq.field == L.field else eq.to_field(L.field)
    return all(not L.restrict(eqf.partial(i)) for i in range(eqf.nvars))


@dataclass
class LineQuadricMeet:
    kind: str                 # "transversal" | "tangent" | "contained"
    points: list              # [(ProjPoint, field)] in the splitting field
    discriminant: object = None


def line_quadric_meet(L, Q):
    """Classify a line against a quadric by the restricted binary form."""
    from .poly import extend_by_sqrt
    eq = Q.equation if isinstance(Q, Hypersurface) else Q
    field = L.field
    eqf = eq if eq.field == field else eq.to_field(field)
    form = L.restrict(eqf)
    if not form:
        return LineQuadricMeet("contained", [])
    a = form.terms.get((2, 0), f_zero(field))
    b = form.terms.get((1, 1), f_zero(field))
    c = form.terms.get((0, 2), f_zero(field))
    disc = b * b - a * c * 4
    if not disc:
        # double root; with disc = 0 and the form nonzero, a = 0 forces b = 0
        if a:
            s, t = -b, a + a
        else:
            s, t = f_one(field) if field else Fraction(1), f_zero(field)
        pt = L.point_at(s, t)
        return LineQuadricMeet("tangent", [(pt, field)], disc)
    ext, embed, sq = extend_by_sqrt(field, disc)
    pe = ProjPoint([embed(v) for v in L.p.coords], ext)
    qe = ProjPoint([embed(v) for v in L.q.coords], ext)
    Le = ProjLine(pe, qe, ext)
    pts = []
    if a:
        a2 = embed(a) + embed(a)
        for sgn in (1, -1):
            s = -embed(b) + (sq if sgn > 0 else -sq)
            pts.append((Le.point_at(s, a2), ext))
    else:
        # s factors out: roots t=0 and bs+ct=0
        pts.append((Le.point_at(f_one(ext) if ext else Fraction(1), f_zero(ext)), ext))
        pts.append((Le.point_at(-embed(c), embed(b)), ext))
    return LineQuadricMeet("transversal", pts, disc)


# ---------------------------------------------------------------------------
# hyperplane restriction and the trope certificate
# ---------------------------------------------------------------------------

def restrict_to_hyperplane(poly, h):
    """Restrict to the hyperplane sum h_i x_i = 0 by solving for one variable.

    Returns (restricted polynomial in n-1 variables, lift) where lift maps a
    point of the hyperplane chart back to ambient coordinates.
    """
    n = poly.nvars
    field = poly.field
    piv = None
    for i in range(n - 1, -1, -1):
        if h[i]:
            piv = i
            break
    if piv is None:
        raise ValueError("zero hyperplane")
    inv = f_inv(h[piv])
    rest = [i for i in range(n) if i != piv]
    imgs = []
    for i in range(n):
        if i != piv:
            k = rest.index(i)
            imgs.append(MultiPoly.variable(k, n - 1, field))
        else:
            terms = {}
            for j in range(n):
                if j == piv or not h[j]:
                    continue
                e = [0] * (n - 1)
                e[rest.index(j)] = 1
                terms[tuple(e)] = -h[j] * inv
            imgs.append(MultiPoly(n - 1, terms, field))
    restricted = poly.substitute(imgs)

    def lift(coords):
        full = [None] * n
        for k, i in enumerate(rest):
            full[i] = coords[k]
        acc = f_zero(field)
        for j in range(n):
            if j != piv and h[j] and full[j]:
                acc = acc + h[j] * full[j]
        full[piv] = -acc * inv
        return full

    return restricted, lift


@dataclass
class TropeResult:
    is_trope: bool
    witness: MultiPoly = None   # square root of the projected octic
    scale: object = None        # scalar with scale * witness**2 == projection
    projection_var: int = None


def trope_certificate(X, h):
    """Double-curve certificate for a hyperplane section of a (4,2) intersection.

    Restricts both equations to the hyperplane, eliminates one variable by a
    resultant and tests the degree-8 plane projection for being a perfect
    square. Projections whose resultant vanishes identically or whose leading
    coefficients share a factor are skipped; the verdict requires every
    remaining projection to agree, which guards against a single accidental
    two-to-one projection.
    """
    f, g = X.equations()
    field = scalar_field(h[0]) if not isinstance(h[0], (int, Fraction)) else None
    for v in h:
        fv = scalar_field(v) if not isinstance(v, (int, Fraction)) else None
        if fv is not None:
            field = fv
    if field is not None:
        f = f.to_field(field) if f.field is None else f
        g = g.to_field(field) if g.field is None else g
    fh, _ = restrict_to_hyperplane(f, h)
    gh, _ = restrict_to_hyperplane(g, h)
    if not fh or not gh:
        raise ValueError("surface contained in the hyperplane")
    verdicts = []
    witness = None
    for var in range(4):
        if fh.degree_in(var) < 1 or gh.degree_in(var) < 1:
            continue
        from .poly import _as_univar
        lcf = _as_univar(fh, var)[-1]
        lcg = _as_univar(gh, var)[-1]
        if mp_gcd(lcf, lcg).degree() > 0:
            continue
        R = resultant(fh, gh, var)
        if not R:
            continue
        if R.field is None:
            R = R.strip_content()
        if R.degree() != 8:
            continue
        _, lc = R.leading()
        Rm = R * f_inv(lc)
        try:
            w = poly_sqrt(Rm)
            verdicts.append(True)
            if witness is None:
                if w * w * lc != R:
                    raise AssertionError("square-root witness failed re-verification")
                witness = (w, lc, var)
        except NotASquare:
            verdicts.append(False)
    if not verdicts:
        raise EliminationDegenerate("no structurally valid projection")
    if all(verdicts):
        w, lc, var = witness
        return TropeResult(True, w, lc, var)
    return TropeResult(False)


def hyperplane_through(points, field=None):
    """Normal vector of the hyperplane spanned by the points, or None."""
    rows = [list(p.coords) for p in points]
    null = mat_nullspace(rows, field)
    if len(null) != 1:
        return None
    return tuple(null[0])
