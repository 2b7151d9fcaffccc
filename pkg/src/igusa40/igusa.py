"""The Igusa quartic model and the hyperplane-section construction pipeline.

Coordinates: P^4(x0..x4) with the sixth symmetric letter x5 = -(x0+...+x4).
The quartic is 4*sum(L_i^4) = (sum L_i^2)^2 over the six letters; its fifteen
singular lines are indexed by perfect matchings of the letters and its ten
tropes by splits of the letters into two triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import f_inv, f_zero
from .linalg import ExactMatrix, mat_nullspace, mat_rref, mat_vec
from .poly import MultiPoly, mp_div_exact, resultant
from .projective import (CompleteIntersectionSurface, Hypersurface, NODE,
                         ProjLine, ProjPoint, classify_node, dual_quadric,
                         hyperplane_through, line_in_singular_locus,
                         line_quadric_meet, restrict_to_hyperplane,
                         trope_certificate)

NVARS = 5
LETTERS = 6


class HyperplaneContainsLine(ValueError):
    pass


class PointsDegenerate(ValueError):
    pass


class NoSolution(ValueError):
    pass


class AmbiguousSolution(ValueError):
    pass


class TangencyOnLine(ValueError):
    pass


# ---------------------------------------------------------------------------
# six-letter scaffolding
# ---------------------------------------------------------------------------

def six_letter_forms(field=None):
    """Linear forms of the six letters on P^4: x0..x4 and -(x0+..+x4)."""
    out = [MultiPoly.variable(i, NVARS, field) for i in range(NVARS)]
    out.append(-sum(out[1:], out[0]))
    return out


def igusa_quartic(field=None):
    forms = six_letter_forms(field)
    p2 = sum((f * f for f in forms[1:]), forms[0] * forms[0])
    p4 = sum((f ** 4 for f in forms[1:]), forms[0] ** 4)
    return p4 * 4 - p2 * p2


def matchings():
    """The 15 perfect matchings of {0..5}, each a sorted tuple of sorted pairs."""
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(tuple(acc))
            return
        a = rest[0]
        for b in rest[1:]:
            nxt = [v for v in rest if v not in (a, b)]
            rec(nxt, acc + [(a, b)])

    rec(list(range(LETTERS)), [])
    return out


def triple_splits():
    """The 10 splits of {0..5} into two triples, keyed by the triple without 5."""
    out = []
    for t in itertools.combinations(range(LETTERS - 1), 3):
        out.append(tuple(t))
    return out


def line_for_matching(m, field=None):
    """Singular line of the matching: paired letters equal, letters sum to zero."""
    def six_point(vals):
        six = [None] * LETTERS
        for (a, b), v in zip(m, vals):
            six[a] = v
            six[b] = v
        return six[:NVARS]

    p = ProjPoint(six_point([Fraction(1), Fraction(0), Fraction(-1)]), field)
    q = ProjPoint(six_point([Fraction(0), Fraction(1), Fraction(-1)]), field)
    return ProjLine(p, q, field)


def trope_normal(triple):
    """Hyperplane coefficients of the trope for a triple not containing 5."""
    h = [Fraction(0)] * NVARS
    for i in triple:
        h[i] = Fraction(1)
    return tuple(h)


def trope_witness(triple, field=None):
    """Quadric W with F = 4*W^2 on the trope: half the letter-square split."""
    forms = six_letter_forms(field)
    acc = MultiPoly.zero(NVARS, field)
    for i in range(LETTERS):
        s = forms[i] * forms[i]
        acc = acc + (s if i in triple else -s)
    return acc * Fraction(1, 2)


def perm_matrix_p4(sigma):
    """5x5 matrix of the letter permutation acting on P^4 coordinates.

    sigma maps letter positions: image point coordinate i is the old letter
    sigma^{-1}(i); the sixth letter is eliminated through the sum relation.
    """
    inv = [0] * LETTERS
    for i, v in enumerate(sigma):
        inv[v] = i
    rows = []
    for i in range(NVARS):
        src = inv[i]
        if src < NVARS:
            rows.append([Fraction(1) if j == src else Fraction(0) for j in range(NVARS)])
        else:
            rows.append([Fraction(-1)] * NVARS)
    return rows


def matching_image(m, sigma):
    return tuple(sorted(tuple(sorted((sigma[a], sigma[b]))) for a, b in m))


def triple_image(triple, sigma):
    """Image split of a triple, rekeyed to the side not containing letter 5."""
    img = {sigma[i] for i in triple}
    if 5 in img:
        img = set(range(LETTERS)) - img
    return tuple(sorted(img))


# ---------------------------------------------------------------------------
# the model object
# ---------------------------------------------------------------------------

@dataclass
class IgusaModel:
    quartic: Hypersurface
    matchings: list
    singular_lines: list            # ProjLine, indexed like matchings
    trope_triples: list             # triples without letter 5
    tropes: list                    # hyperplane coefficient tuples
    trope_witnesses: list
    line_trope_incidence: list      # incidence[i][j] = line i inside trope j

    def line_index(self, m):
        return self.matchings.index(m)


_MODEL_CACHE = {}


def igusa_build():
    """Construct and verify the Igusa model (cached)."""
    if "model" in _MODEL_CACHE:
        return _MODEL_CACHE["model"]
    F = igusa_quartic()
    quartic = Hypersurface(F, 4)
    ms = matchings()
    lines = [line_for_matching(m) for m in ms]
    for ln in lines:
        if not line_in_singular_locus(quartic, ln):
            raise AssertionError("candidate singular line fails the Jacobian identity")
    triples = triple_splits()
    tropes = [trope_normal(t) for t in triples]
    wits = []
    for t, h in zip(triples, tropes):
        w = trope_witness(t)
        fh, _ = restrict_to_hyperplane(F, h)
        wh, _ = restrict_to_hyperplane(w, h)
        if fh != wh * wh * 4:
            raise AssertionError("trope witness identity failed")
        wits.append(w)
    incidence = []
    for ln in lines:
        row = []
        for h in tropes:
            on = all(not _dot(h, pt.coords) for pt in (ln.p, ln.q))
            row.append(on)
        incidence.append(row)
    for row in incidence:
        if sum(row) != 4:
            raise AssertionError("each singular line should lie in 4 tropes")
    for j in range(len(tropes)):
        if sum(incidence[i][j] for i in range(len(lines))) != 6:
            raise AssertionError("each trope should contain 6 singular lines")
    model = IgusaModel(quartic, ms, lines, triples, tropes, wits, incidence)
    _MODEL_CACHE["model"] = model
    return model


def _dot(h, coords):
    acc = Fraction(0)
    for a, b in zip(h, coords):
        if a and b:
            acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# hyperplane sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamPoint:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def of(cls, a, b, c, d):
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def hyperplane(self):
        return (self.a, self.b, self.c, self.d, Fraction(-1))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


def section_nodes(model, params):
    """One node per singular line: the intersection with the hyperplane."""
    h = params.hyperplane()
    nodes = []
    for m, ln in zip(model.matchings, model.singular_lines):
        cp = _dot(h, ln.p.coords)
        cq = _dot(h, ln.q.coords)
        if not cp and not cq:
            raise HyperplaneContainsLine("hyperplane contains the line of %s" % (m,))
        node = ln.point_at(cq, -cp)
        nodes.append(node)
    if len({n for n in nodes}) != len(nodes):
        raise PointsDegenerate("section nodes are not pairwise distinct")
    return nodes


def section_quartic(model, params):
    """The section as a quartic in P^3 (variables x0..x3, t eliminated)."""
    fh, lift = restrict_to_hyperplane(model.quartic.equation, params.hyperplane())
    return fh, lift


def p3_coords(point):
    """Drop the eliminated coordinate t of a point on the parameter hyperplane."""
    return ProjPoint(point.coords[:4], point.field)


def admissible_quintuples(model, probe_params=None):
    """5-sets of singular lines with no trope containing 3 of them.

    Returns (sets, both_filters) where both_filters additionally excludes sets
    whose section nodes at the probe parameter have 4 coplanar members; the
    two filters are reported separately.
    """
    n = len(model.singular_lines)
    sets = []
    for combo in itertools.combinations(range(n), 5):
        ok = True
        for j in range(len(model.tropes)):
            if sum(1 for i in combo if model.line_trope_incidence[i][j]) >= 3:
                ok = False
                break
        if ok:
            sets.append(combo)
    both = []
    if probe_params is not None:
        nodes = section_nodes(model, probe_params)
        for combo in sets:
            pts = [p3_coords(nodes[i]) for i in combo]
            good = True
            for quad in itertools.combinations(range(5), 4):
                rows = [list(pts[i].coords) for i in quad]
                _, rank, _, _ = mat_rref(rows)
                if rank <= 3:
                    good = False
                    break
            if good:
                both.append(combo)
    return sets, both


def canonical_quintuple(model):
    """The lexicographically first admissible quintuple (combinatorial filter)."""
    sets, _ = admissible_quintuples(model)
    return sorted(sets)[0]


# ---------------------------------------------------------------------------
# quadric systems and fitting
# ---------------------------------------------------------------------------

def _monomials(nvars, deg):
    """Exponent tuples of total degree deg, graded-lex descending."""
    out = []

    def rec(i, remaining, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [remaining]))
            return
        for v in range(remaining, -1, -1):
            rec(i + 1, remaining - v, acc + [v])

    rec(0, deg, [])
    out.sort(key=lambda e: e, reverse=True)
    return out


def quadrics_through_points(points):
    """Basis of the quadrics on P^3 vanishing at five points in general position."""
    if len(points) != 5:
        raise ValueError("need exactly five points")
    monos = _monomials(4, 2)
    rows = []
    for p in points:
        pt = list(p.coords)
        row = []
        for e in monos:
            v = Fraction(1)
            for i, k in enumerate(e):
                for _ in range(k):
                    v = v * pt[i]
            row.append(v)
        rows.append(row)
    _, rank, _, _ = mat_rref(rows)
    if rank != 5:
        raise PointsDegenerate("five points impose dependent conditions")
    basis = mat_nullspace(rows)
    quads = []
    for v in basis:
        terms = {e: c for e, c in zip(monos, v) if c}
        quads.append(MultiPoly(4, terms).strip_content())
    return quads


def fit_quadric_combination(basis, target_quartic):
    """Solve sum c_ij q_i q_j = mu * F as an exact linear system.

    Returns (sym_c as 5x5 rows, mu, quadric on P^4). The solution space must be
    one-dimensional with mu nonzero.
    """
    monos4 = _monomials(4, 4)
    mono_index = {e: k for k, e in enumerate(monos4)}
    cols = []
    pairs = [(i, j) for i in range(5) for j in range(i, 5)]
    for (i, j) in pairs:
        prod = basis[i] * basis[j]
        col = [Fraction(0)] * len(monos4)
        for e, c in prod.terms.items():
            col[mono_index[e]] = c
        cols.append(col)
    colF = [Fraction(0)] * len(monos4)
    for e, c in target_quartic.terms.items():
        colF[mono_index[e]] = c
    cols.append([-c for c in colF])
    rows = [[cols[k][r] for k in range(len(cols))] for r in range(len(monos4))]
    null = mat_nullspace(rows)
    if not null:
        raise NoSolution("no quadric combination matches the section quartic")
    if len(null) > 1:
        raise AmbiguousSolution("solution space has dimension %d" % len(null))
    sol = null[0]
    mu = sol[-1]
    if not mu:
        raise NoSolution("only degenerate combinations (mu = 0) exist")
    inv = 1 / mu
    coeffs = [c * inv for c in sol[:-1]]
    terms = {}
    gram = [[Fraction(0)] * 5 for _ in range(5)]
    for (i, j), c in zip(pairs, coeffs):
        if not c:
            continue
        e = [0] * 5
        e[i] += 1
        e[j] += 1
        terms[tuple(e)] = c
        if i == j:
            gram[i][i] = c
        else:
            gram[i][j] = c / 2
            gram[j][i] = c / 2
    quad = MultiPoly(5, terms)
    return gram, mu, quad


def segre_cubic_fit(basis):
    """The cubic through the image of the quadric system, certified exactly."""
    monos3 = _monomials(5, 3)
    rows = []
    samples = _sample_points()
    for u in samples:
        y = [q.eval(u) for q in basis]
        if not any(y):
            continue
        row = []
        for e in monos3:
            v = Fraction(1)
            for i, k in enumerate(e):
                for _ in range(k):
                    v = v * y[i]
            row.append(v)
        rows.append(row)
        if len(rows) >= len(monos3) + 8:
            break
    null = mat_nullspace(rows)
    if len(null) != 1:
        raise NoSolution("image cubic fit has nullity %d" % len(null))
    cubic = MultiPoly(5, {e: c for e, c in zip(monos3, null[0]) if c}).strip_content()
    if cubic.substitute(basis):
        raise AssertionError("cubic certificate failed: composition is nonzero")
    return cubic


def _sample_points():
    out = []
    vals = [1, 2, 3, 5, 7, -1, -2, -3, 4, -5]
    for a in vals:
        for b in vals:
            for c in vals:
                out.append([Fraction(1), Fraction(a), Fraction(b), Fraction(c)])
    return out


# ---------------------------------------------------------------------------
# dual-side lines and frame transport
# ---------------------------------------------------------------------------

def exceptional_plane_points(basis, node3):
    """Three spanning points of the blown-up plane over a chosen node."""
    pt = list(node3.coords)
    jac = [[q.partial(i).eval(pt) for i in range(4)] for q in basis]  # 5x4
    red, rank, _, _ = mat_rref([[jac[r][d] for r in range(5)] for d in range(4)])
    if rank != 3:
        raise PointsDegenerate("exceptional plane rank %d" % rank)
    return [ProjPoint(red[i]) for i in range(3)]


def plane_samples(p, q, r):
    """Generic sample points of the plane spanned by three points."""
    combos = [(1, 1, 1), (1, 2, 3), (2, 1, 5), (1, 3, 2), (3, 1, 1), (1, 5, 2),
              (1, -1, 2), (2, 3, 1)]
    out = []
    for (a, b, c) in combos:
        coords = [Fraction(a) * x + Fraction(b) * y + Fraction(c) * z
                  for x, y, z in zip(p.coords, q.coords, r.coords)]
        if any(coords):
            out.append(ProjPoint(coords))
    return out


def triple_plane_points(nodes3, ijk):
    """Sample points on the plane through three chosen nodes (off the nodes)."""
    p, q, r = (nodes3[t] for t in ijk)
    return plane_samples(p, q, r)


def image_line(cubic, plane_points, basis=None):
    """Line traced by the gradient map of the cubic on a plane of its surface."""
    imgs = []
    for pp in plane_points:
        if basis is not None:
            y = [q.eval(list(pp.coords)) for q in basis]
            if not any(y):
                continue
        else:
            y = list(pp.coords)
        if cubic.eval(y):
            raise AssertionError("plane sample point is off the cubic")
        grad = [cubic.partial(i).eval(y) for i in range(5)]
        if not any(grad):
            continue
        imgs.append(ProjPoint(grad))
    # find two independent images, verify the rest collinear
    base = imgs[0]
    other = None
    for cand in imgs[1:]:
        if cand != base:
            other = cand
            break
    if other is None:
        raise PointsDegenerate("plane image collapsed to a point")
    line = ProjLine(base, other)
    for cand in imgs:
        if not line.contains(cand):
            raise AssertionError("plane image is not a line")
    return line


def solve_line_correspondence(dual_lines, std_lines, assignment):
    """Matrix G with G * (dual line) = assigned standard line, up to scale.

    assignment[k] = index of the standard line matched to dual line k; returns
    None when the linear conditions admit no one-dimensional solution.
    """
    eqs = []
    for k, std_idx in enumerate(assignment):
        dl = dual_lines[k]
        sl = std_lines[std_idx]
        s, t = list(sl.p.coords), list(sl.q.coords)
        for P in (dl.p.coords, dl.q.coords):
            # G*P must lie in span(s, t): all 3x3 minors of [G*P; s; t] vanish
            for rows in itertools.combinations(range(5), 3):
                i, j, k3 = rows
                # minor expansion: linear in the entries of G
                eq = {}
                for (ia, ib, ic), sgn in (((i, j, k3), 1), ((j, k3, i), 1), ((k3, i, j), 1)):
                    det2 = s[ib] * t[ic] - s[ic] * t[ib]
                    if det2:
                        for col in range(5):
                            if P[col]:
                                eq[(ia, col)] = eq.get((ia, col), Fraction(0)) + sgn * det2 * P[col]
                if eq:
                    eqs.append(eq)
    rows = []
    for eq in eqs:
        row = [Fraction(0)] * 25
        for (r, c), v in eq.items():
            row[r * 5 + c] = v
        rows.append(row)
    null = mat_nullspace(rows)
    if len(null) != 1:
        return None
    flat = null[0]
    return [[flat[r * 5 + c] for c in range(5)] for r in range(5)]


def transport_quadric(quad_dual, g_rows):
    """Quadric in standard coordinates: Gram -> Ginv^T A Ginv through substitution."""
    det, inv = ExactMatrix(g_rows).det_and_inverse()
    if inv is None:
        raise ValueError("correspondence matrix not invertible")
    inv_rows = inv.row_list()
    imgs = []
    for i in range(5):
        terms = {}
        for j in range(5):
            c = inv_rows[i][j]
            if c:
                e = [0] * 5
                e[j] = 1
                terms[tuple(e)] = c
        imgs.append(MultiPoly(5, terms))
    return quad_dual.substitute(imgs).strip_content()


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

@dataclass
class NodeRecord:
    kind: str                  # "line" | "tangency"
    label: object              # matching (line) or unused-node matching label
    point: ProjPoint
    field_minpoly: tuple       # () for Q, else the defining modulus
    verdict: str


@dataclass
class ConstructionReport:
    params: ParamPoint
    quintuple: tuple
    s2_gram: list
    quadric_standard: MultiPoly
    node_records: list
    status: str
    extra: dict = dc_field(default_factory=dict)

    def node_count(self):
        return len(self.node_records)


def build_to_quadric(params, model=None):
    """Pipeline up to the transported quadric (no node verification).

    Returns a dict of the intermediate exact objects.
    """
    model = model or igusa_build()
    quint = canonical_quintuple(model)
    nodes = section_nodes(model, params)
    pts3 = [p3_coords(nodes[i]) for i in quint]
    for quad in itertools.combinations(range(5), 4):
        rows = [list(pts3[i].coords) for i in quad]
        _, rank, _, _ = mat_rref(rows)
        if rank <= 3:
            raise PointsDegenerate("four chosen nodes are coplanar")
    fh, _ = section_quartic(model, params)
    basis = quadrics_through_points(pts3)
    gram, mu, s2 = fit_quadric_combination(basis, fh)
    cubic = segre_cubic_fit(basis)
    unused = [i for i in range(15) if i not in quint]
    tangency_targets = []
    for i in unused:
        q3 = p3_coords(nodes[i])
        y = [q.eval(list(q3.coords)) for q in basis]
        if cubic.eval(y):
            raise AssertionError("unused node image is off the cubic")
        tangency_targets.append((model.matchings[i], y))
    q2 = dual_quadric(Hypersurface(s2, 4)).equation
    # dual-frame singular lines with their labels
    dual_lines = []
    for k, i in enumerate(quint):
        span = exceptional_plane_points(basis, pts3[k])
        pts = plane_samples(*span)
        dual_lines.append((("exc", model.matchings[i]),
                           image_line(cubic, pts, basis=None)))
    for ijk in itertools.combinations(range(5), 3):
        pts = triple_plane_points(pts3, ijk)
        dual_lines.append((("tri", tuple(model.matchings[quint[t]] for t in ijk)),
                           image_line(cubic, pts, basis=basis)))
    return {
        "model": model, "quintuple": quint, "nodes": nodes, "pts3": pts3,
        "basis": basis, "s2_gram": gram, "s2": s2, "mu": mu, "cubic": cubic,
        "q2_dual_frame": q2, "dual_lines": dual_lines,
        "tangency_targets": tangency_targets,
    }


def _line_meet_graph(lines):
    n = len(lines)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows = [list(lines[i].p.coords), list(lines[i].q.coords),
                    list(lines[j].p.coords), list(lines[j].q.coords)]
            _, rank, _, _ = mat_rref(rows)
            meet = rank <= 3
            adj[i][j] = adj[j][i] = meet
    return adj


def _graph_isomorphisms(adj_a, adj_b):
    """Backtracking isomorphisms from graph a to graph b (deterministic order)."""
    n = len(adj_a)
    deg_a = [sum(r) for r in adj_a]
    deg_b = [sum(r) for r in adj_b]
    order = sorted(range(n), key=lambda i: -deg_a[i])

    def rec(k, mapping, used):
        if k == n:
            yield list(mapping)
            return
        i = order[k]
        for j in range(n):
            if used[j] or deg_b[j] != deg_a[i]:
                continue
            ok = True
            for kk in range(k):
                i2 = order[kk]
                if adj_a[i][i2] != adj_b[j][mapping[i2]]:
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                yield from rec(k + 1, mapping, used)
                used[j] = False
                mapping[i] = -1

    yield from rec(0, [-1] * n, [False] * n)


def build_X40(params, model=None, max_assignments=2000):
    """Construct the 40-nodal intersection at rational parameters and verify it.

    The dual-frame quadric is transported onto the standard Igusa model by the
    projectivity matching the fifteen contracted lines with the fifteen
    standard singular lines; the transported candidates are then certified by
    the exact Hessian node test.
    """
    data = build_to_quadric(params, model)
    model = data["model"]
    dual_lines = [ln for _, ln in data["dual_lines"]]
    adj_d = _line_meet_graph(dual_lines)
    adj_s = _line_meet_graph(model.singular_lines)
    tried = 0
    for mapping in _graph_isomorphisms(adj_d, adj_s):
        tried += 1
        if tried > max_assignments:
            break
        g = solve_line_correspondence(dual_lines, model.singular_lines, mapping)
        if g is None:
            continue
        try:
            report = _verify_with_transport(params, data, g, mapping)
        except (TangencyOnLine, AssertionError, ValueError):
            continue
        report.extra["assignments_tried"] = tried
        return report
    raise NoSolution("no line correspondence produced a verified transport")


def _verify_with_transport(params, data, g_rows, mapping):
    model = data["model"]
    qstd = transport_quadric(data["q2_dual_frame"], g_rows)
    X = CompleteIntersectionSurface(Hypersurface(model.quartic.equation, 4),
                                    Hypersurface(qstd, 4))
    records = []
    seen_points = set()
    for idx, (m, ln) in enumerate(zip(model.matchings, model.singular_lines)):
        meet = line_quadric_meet(ln, Hypersurface(qstd, 4))
        if meet.kind != "transversal":
            raise TangencyOnLine("line %s meets the quadric with kind %s" % (m, meet.kind))
        for pt, fld in meet.points:
            v = classify_node(X if fld is None else _lift_ci(X, fld), pt)
            if v != NODE:
                raise AssertionError("line candidate failed the node test")
            key = (idx, pt.coords)
            if key in seen_points:
                raise AssertionError("duplicate node")
            seen_points.add(key)
            records.append(NodeRecord("line", m, pt,
                                      () if fld is None else fld.min_poly, v))
    cubic = data["cubic"]
    for label, y in data["tangency_targets"]:
        grad = [cubic.partial(i).eval(y) for i in range(5)]
        if not any(grad):
            raise AssertionError("gradient vanished at a tangency target")
        z = mat_vec([list(r) for r in g_rows], grad)
        pt = ProjPoint(z)
        v = classify_node(X, pt)
        if v != NODE:
            raise AssertionError("tangency candidate failed the node test")
        records.append(NodeRecord("tangency", label, pt, (), v))
    rational_pts = [r.point for r in records if not r.field_minpoly]
    if len(set(rational_pts)) != len(rational_pts):
        raise AssertionError("rational nodes are not pairwise distinct")
    if len(records) != 40:
        raise AssertionError("expected 40 nodes, got %d" % len(records))
    return ConstructionReport(params, data["quintuple"], data["s2_gram"], qstd,
                              records, "Success",
                              {"mapping": list(mapping)})


def _lift_ci(X, fld):
    f, g = X.equations()
    return CompleteIntersectionSurface(
        Hypersurface(f.to_field(fld), 4), Hypersurface(g.to_field(fld), 4))
