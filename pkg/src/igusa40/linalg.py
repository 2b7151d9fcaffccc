"""Exact linear algebra over Q and number fields, plus integer normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement, f_coerce, f_inv, f_one, f_zero


class SingularMatrix(ValueError):
    pass


# ---------------------------------------------------------------------------
# row-level core; a matrix is a list of rows of scalars sharing one field
# ---------------------------------------------------------------------------

def mat_rref(rows, field=None):
    """Reduced row echelon form with recorded transform.

    Returns (reduced, rank, pivots, transform) with transform * M = reduced
    exactly. Rows of the transform start from the identity.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    t = [[f_one(field) if i == j else f_zero(field) for j in range(nr)] for i in range(nr)]
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        t[r], t[pr] = t[pr], t[r]
        inv = f_inv(m[r][c])
        m[r] = [v * inv for v in m[r]]
        t[r] = [v * inv for v in t[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                t[i] = [a - f * b for a, b in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, r, tuple(pivots), t


def mat_nullspace(rows, field=None):
    """Basis of the right nullspace; each vector v satisfies M v = 0 exactly."""
    if not rows:
        return []
    nc = len(rows[0])
    red, rank, pivots, _ = mat_rref(rows, field)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [f_zero(field)] * nc
        v[fc] = f_one(field)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def mat_mul(a, b, field=None):
    nr, nk, nc = len(a), len(b), len(b[0])
    out = []
    for i in range(nr):
        row = []
        ai = a[i]
        for j in range(nc):
            acc = f_zero(field)
            for k in range(nk):
                if ai[k]:
                    acc = acc + ai[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v, field=None):
    out = []
    for row in a:
        acc = f_zero(field)
        for x, y in zip(row, v):
            if x:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_det_inverse(rows, field=None):
    """Exact determinant and inverse by Gaussian elimination.

    Returns (det, inverse or None); singular input yields (0, None).
    """
    n = len(rows)
    m = [list(r) for r in rows]
    inv = [[f_one(field) if i == j else f_zero(field) for j in range(n)] for i in range(n)]
    det = f_one(field)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return f_zero(field), None
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            inv[c], inv[pr] = inv[pr], inv[c]
            det = -det
        det = det * m[c][c]
        piv = f_inv(m[c][c])
        m[c] = [v * piv for v in m[c]]
        inv[c] = [v * piv for v in inv[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
                inv[i] = [a - f * b for a, b in zip(inv[i], inv[c])]
    return det, inv


def mat_solve(rows, rhs, field=None):
    """One solution of M x = rhs, or None if inconsistent."""
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    red, rank, pivots, _ = mat_rref(aug, field)
    nc = len(rows[0])
    for i in range(rank):
        if pivots[i] == nc:
            return None
    x = [f_zero(field)] * nc
    for i, pc in enumerate(pivots):
        x[pc] = red[i][nc]
    return x


def bareiss_rank_det(rows):
    """Fraction-free elimination over Z/Q: independent oracle for rank and det.

    Input entries are coerced to Fraction; determinant is returned for square
    nonsingular input, else None.
    """
    m = [[Fraction(v) for v in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    prev = Fraction(1)
    sign = 1
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
            sign = -sign
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev
            m[i][c] = Fraction(0)
        prev = m[r][c]
        r += 1
    rank = r
    det = None
    if nr == nc and rank == nr:
        det = sign * prev
    return rank, det


# ---------------------------------------------------------------------------
# the spec-facing matrix type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RrefResult:
    reduced: "ExactMatrix"
    rank: int
    pivots: tuple
    nullspace: list
    transform: "ExactMatrix"


class ExactMatrix:
    """Immutable exact matrix over Q (field=None) or a NumberField."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries, field=None):
        ent = tuple(tuple(f_coerce(field, v) for v in row) for row in entries)
        self.entries = ent
        self.field = field
        self.rows = len(ent)
        self.cols = len(ent[0]) if ent else 0
        for row in ent:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n, field=None):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    def row_list(self):
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.entries == other.entries
                and self.field == other.field)

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(mat_mul(self.row_list(), other.row_list(), self.field), self.field)
        return NotImplemented

    def rref(self):
        red, rank, pivots, t = mat_rref(self.row_list(), self.field)
        null = mat_nullspace(self.row_list(), self.field)
        return RrefResult(ExactMatrix(red, self.field), rank, pivots, null,
                          ExactMatrix(t, self.field))

    def det_and_inverse(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        det, inv = mat_det_inverse(self.row_list(), self.field)
        return det, (ExactMatrix(inv, self.field) if inv is not None else None)

    def transpose(self):
        return ExactMatrix(list(zip(*self.entries)), self.field)


# ---------------------------------------------------------------------------
# integer normal forms
# ---------------------------------------------------------------------------

def hnf(mat):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U*M = H, H upper-echelon with positive
    pivots and entries above each pivot reduced into [0, pivot).
    """
    m = [[int(v) for v in row] for row in mat]
    nr = len(m)
    nc = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    r = 0
    for c in range(nc):
        # gcd sweep below row r
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, nr):
            while m[i][c]:
                q = m[r][c] // m[i][c]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                u[r] = [a - q * b for a, b in zip(u[r], u[i])]
                m[r], m[i] = m[i], m[r]
                u[r], u[i] = u[i], u[r]
        if m[r][c] < 0:
            m[r] = [-v for v in m[r]]
            u[r] = [-v for v in u[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
        if r == nr:
            break
    return m, u


def hnf_basis(mat):
    """Nonzero rows of the HNF: a canonical lattice basis for the row span."""
    h, _ = hnf(mat)
    return [row for row in h if any(row)]


def snf_with_transforms(mat):
    """Smith normal form with unimodular transforms: A*M*B = diag(d1..dk)."""
    m = [[int(v) for v in row] for row in mat]
    nr = len(m)
    nc = len(m[0]) if m else 0
    a = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    b = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in b:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, k):
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]

    def addmul_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in b:
            row[dst] += k * row[src]

    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    addmul_row(i, t, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    addmul_col(j, t, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # ensure pivot divides the rest of the block
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if m[i][j] % m[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                addmul_row(t, bad, 1)
        if m[t][t] < 0:
            m[t] = [-v for v in m[t]]
            a[t] = [-v for v in a[t]]
        t += 1
    diag = [m[i][i] for i in range(min(nr, nc))]
    return diag, a, b


def snf(mat):
    """Invariant factors d1 | d2 | ... (zeros trimmed from the tail kept)."""
    diag, _, _ = snf_with_transforms(mat)
    return diag


def signature(gram):
    """Signature (n_plus, n_minus, n_zero) of a rational symmetric matrix.

    Congruence diagonalization; exact, no eigenvalues.
    """
    n = len(gram)
    m = [[Fraction(v) for v in row] for row in gram]
    pos = neg = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        if m[k][k] == 0:
            # find j>k with m[j][j] != 0 or m[k][j] != 0
            sw = None
            for j in range(k + 1, n):
                if m[j][j]:
                    sw = j
                    break
            if sw is not None:
                m[k], m[sw] = m[sw], m[k]
                for row in m:
                    row[k], row[sw] = row[sw], row[k]
            else:
                off = None
                for j in range(k + 1, n):
                    if m[k][j]:
                        off = j
                        break
                if off is None:
                    zero += 1
                    k += 1
                    continue
                # row/col combination to create a nonzero diagonal entry
                for t in range(n):
                    m[k][t] += m[off][t]
                for t in range(n):
                    m[t][k] += m[t][off]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / d
                for j in range(n):
                    m[i][j] -= f * m[k][j]
        for j in range(k + 1, n):
            if m[k][j]:
                f = m[k][j] / d
                for i in range(n):
                    m[i][j] -= f * m[i][k]
        k += 1
    del idx
    return pos, neg, zero
