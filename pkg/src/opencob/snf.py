"""Exact integer linear algebra: sparse matrices and Smith normal form.

Everything here works over arbitrary-precision Python ints.  Matrices are
stored column-major as ``{col: {row: value}}`` with explicit shape, which
suits the engine's highly sparse action/relation matrices.
"""

from __future__ import annotations

from fractions import Fraction


class IntMat:
    """Sparse integer matrix, column-major."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows, ncols, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {} if cols is None else cols

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols: dict[int, dict[int, int]] = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols.setdefault(j, {})[i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {j: {j: 1} for j in range(n)})

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in self.cols.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def set_col(self, j, col):
        col = {i: v for i, v in col.items() if v}
        if col:
            self.cols[j] = col
        elif j in self.cols:
            del self.cols[j]

    def col(self, j):
        return self.cols.get(j, {})

    def entry(self, i, j):
        return self.cols.get(j, {}).get(i, 0)

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def is_zero(self):
        return not self.cols

    def apply(self, vec):
        """Multiply by a sparse vector {index: value}."""
        out: dict[int, int] = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if not col:
                continue
            for i, v in col.items():
                w = out.get(i, 0) + c * v
                if w:
                    out[i] = w
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        out = IntMat(self.nrows, other.ncols)
        ocols = out.cols
        for j, col in other.cols.items():
            new = self.apply(col)
            if new:
                ocols[j] = new
        return out

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix sum")
        out = IntMat(self.nrows, self.ncols)
        for j in set(self.cols) | set(other.cols):
            col = dict(self.cols.get(j, {}))
            for i, v in other.cols.get(j, {}).items():
                w = col.get(i, 0) + v
                if w:
                    col[i] = w
                else:
                    col.pop(i, None)
            out.set_col(j, col)
        return out

    def __neg__(self):
        out = IntMat(self.nrows, self.ncols)
        for j, col in self.cols.items():
            out.cols[j] = {i: -v for i, v in col.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, IntMat):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return self.cols == other.cols

    def submatrix(self, row_idx, col_idx):
        """Extract rows/cols by index lists, reindexed densely."""
        rmap = {r: i for i, r in enumerate(row_idx)}
        out = IntMat(len(row_idx), len(col_idx))
        for jj, j in enumerate(col_idx):
            col = self.cols.get(j)
            if not col:
                continue
            new = {rmap[i]: v for i, v in col.items() if i in rmap}
            out.set_col(jj, new)
        return out

    def transpose(self):
        out = IntMat(self.ncols, self.nrows)
        for j, col in self.cols.items():
            for i, v in col.items():
                out.cols.setdefault(i, {})[j] = v
        return out

    def __repr__(self):
        return f"IntMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def det_bareiss(rows):
    """Determinant of a dense integer matrix (fraction-free elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(rows, rhs_cols):
    """Solve A X = B over Q for dense integer A (square, invertible).

    Returns X as dense Fraction rows.  Used for change-of-basis between
    unimodular bases, where the result is integral.
    """
    n = len(rows)
    m = len(rhs_cols[0]) if n else 0
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(v) for v in rhs_cols[i]]
           for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise ValueError("singular matrix in solve_exact")
        aug[k], aug[piv] = aug[piv], aug[k]
        pv = aug[k][k]
        aug[k] = [v / pv for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return [row[n:n + m] for row in aug]


class SmithForm:
    """Result of a Smith normal form computation.

    ``u @ mat @ v == d`` with u, v unimodular and d diagonal with the
    divisibility chain d1 | d2 | ... .  Transform factors are computed only
    when requested.
    """

    def __init__(self, diag, rank, u=None, uinv=None, v=None, vinv=None):
        self.diag = diag
        self.rank = rank
        self.u = u
        self.uinv = uinv
        self.v = v
        self.vinv = vinv

    @property
    def invariant_factors(self):
        return [d for d in self.diag if d != 0]

    def is_free_quotient(self):
        """All nonzero invariant factors are 1 (cokernel torsion-free)."""
        return all(d == 1 for d in self.invariant_factors)


def smith(mat, want_u=False, want_uinv=False, want_v=False, want_vinv=False):
    """Smith normal form of a sparse IntMat.

    Pivots prefer +-1 entries with a Markowitz fill estimate; general
    Euclidean steps only happen when no unit entry remains.
    """
    nrows, ncols = mat.nrows, mat.ncols
    # working copy, row- and column-major simultaneously
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in mat.cols.items()}
    rows: dict[int, dict[int, int]] = {}
    for j, c in cols.items():
        for i, v in c.items():
            rows.setdefault(i, {})[j] = v

    u = IntMat.identity(nrows) if want_u else None          # row-ops, row-major semantics
    uinv = IntMat.identity(nrows) if want_uinv else None    # column ops (inverse row-ops)
    v = IntMat.identity(ncols) if want_v else None          # col-ops
    vinv = IntMat.identity(ncols) if want_vinv else None

    # u is stored column-major too; a row operation R_i += k R_j acts on u the
    # same way, which in column-major form is: for every col, col[i] += k*col[j].
    # To keep that cheap we store u transposed (as rows of u = cols of u^T).
    uT = IntMat.identity(nrows) if want_u else None
    vinvT = IntMat.identity(ncols) if want_vinv else None

    def set_entry(i, j, val):
        if val:
            cols.setdefault(j, {})[i] = val
            rows.setdefault(i, {})[j] = val
        else:
            c = cols.get(j)
            if c and i in c:
                del c[i]
                if not c:
                    del cols[j]
            r = rows.get(i)
            if r and j in r:
                del r[j]
                if not r:
                    del rows[i]

    def row_op(i, j, k):
        # R_i += k * R_j  on the working matrix and transforms
        if k == 0:
            return
        for col_j, val in list(rows.get(j, {}).items()):
            set_entry(i, col_j, cols.get(col_j, {}).get(i, 0) + k * val)
        if uT is not None:
            cj = uT.col(j)
            ci = dict(uT.col(i))
            for r, val in cj.items():
                w = ci.get(r, 0) + k * val
                if w:
                    ci[r] = w
                else:
                    ci.pop(r, None)
            uT.set_col(i, ci)
        if uinv is not None:
            # uinv <- uinv * (I - k E_ij): col_j -= k * col_i
            ci = uinv.col(i)
            cj = dict(uinv.col(j))
            for r, val in ci.items():
                w = cj.get(r, 0) - k * val
                if w:
                    cj[r] = w
                else:
                    cj.pop(r, None)
            uinv.set_col(j, cj)

    def col_op(j, i, k):
        # C_j += k * C_i
        if k == 0:
            return
        for row_i, val in list(cols.get(i, {}).items()):
            set_entry(row_i, j, cols.get(j, {}).get(row_i, 0) + k * val)
        if v is not None:
            ci = v.col(i)
            cj = dict(v.col(j))
            for r, val in ci.items():
                w = cj.get(r, 0) + k * val
                if w:
                    cj[r] = w
                else:
                    cj.pop(r, None)
            v.set_col(j, cj)
        if vinvT is not None:
            # vinv <- (I - k E_ij) * vinv: row_i -= k * row_j, transposed storage
            cj = vinvT.col(j)
            ci = dict(vinvT.col(i))
            for r, val in cj.items():
                w = ci.get(r, 0) - k * val
                if w:
                    ci[r] = w
                else:
                    ci.pop(r, None)
            vinvT.set_col(i, ci)

    def row_swap(i, j):
        if i == j:
            return
        ri, rj = rows.get(i, {}), rows.get(j, {})
        for col_j in set(ri) | set(rj):
            a = cols.get(col_j, {}).get(i, 0)
            b = cols.get(col_j, {}).get(j, 0)
            set_entry(i, col_j, b)
            set_entry(j, col_j, a)
        for m_ in (uT, uinv):
            if m_ is not None:
                a, b = m_.col(i), m_.col(j)
                m_.set_col(i, b)
                m_.set_col(j, a)

    def col_swap(i, j):
        if i == j:
            return
        a, b = cols.get(i, {}), cols.get(j, {})
        ai = dict(a)
        bi = dict(b)
        for r in set(ai) | set(bi):
            set_entry(r, i, bi.get(r, 0))
            set_entry(r, j, ai.get(r, 0))
        for m_ in (v, vinvT):
            if m_ is not None:
                a2, b2 = m_.col(i), m_.col(j)
                m_.set_col(i, b2)
                m_.set_col(j, a2)

    def row_negate(i):
        for col_j in list(rows.get(i, {})):
            set_entry(i, col_j, -cols[col_j][i])
        if uT is not None:
            uT.set_col(i, {r: -val for r, val in uT.col(i).items()})
        if uinv is not None:
            uinv.set_col(i, {r: -val for r, val in uinv.col(i).items()})

    diag = []
    s = 0
    limit = min(nrows, ncols)
    while s < limit:
        # pivot choice: unit entries first, smallest fill; else min |value|.
        # The scan stops after a handful of unit candidates.
        best = None
        best_key = None
        units_seen = 0
        for j, c in cols.items():
            if j < s:
                continue
            for i, val in c.items():
                if i < s:
                    continue
                if val == 1 or val == -1:
                    units_seen += 1
                    fill = (len(rows[i]) - 1) * (len(c) - 1)
                    key = (False, 1, fill)
                else:
                    key = (True, abs(val), 0)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
                    if key[0] is False and fill == 0:
                        break
            else:
                if units_seen < 24:
                    continue
            break
        if best is None:
            break
        bi, bj = best
        row_swap(s, bi)
        col_swap(s, bj)

        while True:
            pivot = cols.get(s, {}).get(s, 0)
            assert pivot != 0
            # clear column s
            again = False
            for i in [i for i in cols.get(s, {}) if i != s]:
                val = cols[s][i]
                q = val // pivot
                row_op(i, s, -q)
                if cols.get(s, {}).get(i, 0):
                    # remainder smaller than pivot: swap it up and restart
                    row_swap(s, i)
                    again = True
                    break
            if again:
                continue
            for j in [j for j in rows.get(s, {}) if j != s]:
                val = rows[s][j]
                q = val // pivot
                col_op(j, s, -q)
                if rows.get(s, {}).get(j, 0):
                    col_swap(s, j)
                    again = True
                    break
            if not again:
                break
        if cols.get(s, {}).get(s, 0) < 0:
            row_negate(s)
        diag.append(cols[s][s])
        s += 1

    # divisibility chain fix-up
    changed = True
    while changed:
        changed = False
        for k in range(len(diag) - 1):
            a, b = diag[k], diag[k + 1]
            if b % a != 0:
                # standard trick: fold d_{k+1} into column k and re-reduce the 2x2 block
                col_op(k, k + 1, 1)
                # block is now [[a, 0], [b, b]] in rows/cols k, k+1
                while True:
                    pa = cols.get(k, {}).get(k, 0)
                    rem = cols.get(k, {}).get(k + 1, 0)
                    if rem == 0:
                        break
                    q = rem // pa
                    row_op(k + 1, k, -q)
                    if cols.get(k, {}).get(k + 1, 0):
                        row_swap(k, k + 1)
                for j in [j for j in rows.get(k, {}) if j != k]:
                    q = rows[k][j] // cols[k][k]
                    col_op(j, k, -q)
                for j in [j for j in rows.get(k + 1, {}) if j != k + 1]:
                    q = rows[k + 1][j] // cols[k + 1][k + 1]
                    col_op(j, k + 1, -q)
                if cols.get(k, {}).get(k, 0) < 0:
                    row_negate(k)
                if cols.get(k + 1, {}).get(k + 1, 0) < 0:
                    row_negate(k + 1)
                diag[k] = cols[k][k]
                diag[k + 1] = cols[k + 1][k + 1]
                changed = True

    rank = len(diag)
    u_out = uT.transpose() if want_u else None
    vinv_out = vinvT.transpose() if want_vinv else None
    return SmithForm(diag, rank, u=u_out, uinv=uinv, v=v, vinv=vinv_out)


def smith_normal_form(rows):
    """Dense convenience wrapper: returns (U, D, V) with U M V = D.

    All three are dense lists of lists of ints; U and V are unimodular and D
    is diagonal with the divisibility chain.
    """
    mat = IntMat.from_dense(rows) if rows else IntMat(0, 0)
    sf = smith(mat, want_u=True, want_v=True)
    n, m = mat.nrows, mat.ncols
    d = [[0] * m for _ in range(n)]
    for k, val in enumerate(sf.diag):
        d[k][k] = val
    return sf.u.to_dense(), d, sf.v.to_dense()


def solve_int(mat, rhs_vec, _cache=None):
    """Solve mat @ x = rhs over Z, or return None if no integral solution.

    ``_cache`` may hold a precomputed ``smith(mat, want_u=True, want_v=True)``
    to amortize repeated solves against the same matrix.
    """
    sf = _cache if _cache is not None else smith(mat, want_u=True, want_v=True)
    c = sf.u.apply(rhs_vec)
    y: dict[int, int] = {}
    for i, val in c.items():
        if i < sf.rank:
            d = sf.diag[i]
            if val % d != 0:
                return None
            y[i] = val // d
        elif val:
            return None
    return sf.v.apply(y)
