"""
Sparse exact linear algebra over Q or Q(i).

Vectors are plain dicts ``{index: scalar}`` holding nonzero entries only.
A linear map is a :class:`SparseMatrix` stored column by column, because
every operator in this package is built by applying it to basis vectors.

The workhorse is :class:`RowSpace`, an incrementally maintained reduced
row-echelon basis. Adding vectors one at a time gives rank, kernels (through
combination tracking), span membership and projections onto a complement.
"""

from __future__ import annotations

from fractions import Fraction


class SingularSystem(ValueError):
    pass


def vec_add(u, v, c=1):
    """Return u + c*v as a new dict."""
    out = dict(u)
    vec_iadd(out, v, c)
    return out


def vec_iadd(u, v, c=1):
    """In place u += c*v, dropping entries that cancel."""
    if not c:
        return u
    for k, x in v.items():
        y = u.get(k)
        if y is None:
            u[k] = c * x
        else:
            y = y + c * x
            if y:
                u[k] = y
            else:
                del u[k]
    return u


def vec_scale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_is_zero(v):
    return not any(v.values())


def vec_clean(v):
    return {k: x for k, x in v.items() if x}


class SparseMatrix:
    """An nrows x ncols matrix kept as a list of sparse columns."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows, ncols, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        assert len(cols) == ncols
        self.cols = cols

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n, one=1):
        return cls(n, n, [{j: one} for j in range(n)])

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    def to_dense(self, zero=0):
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, 0)

    def apply(self, v):
        out = {}
        for j, x in v.items():
            if x:
                vec_iadd(out, self.cols[j], x)
        return out

    def __matmul__(self, other):
        assert self.ncols == other.nrows, (self.shape, other.shape)
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other):
        assert self.shape == other.shape
        return SparseMatrix(self.nrows, self.ncols,
                            [vec_add(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other):
        assert self.shape == other.shape
        return SparseMatrix(self.nrows, self.ncols,
                            [vec_add(a, b, -1) for a, b in zip(self.cols, other.cols)])

    def scale(self, c):
        return SparseMatrix(self.nrows, self.ncols, [vec_scale(col, c) for col in self.cols])

    def transpose(self):
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def submatrix(self, rows, cols):
        """Rows/cols given as ordered index lists; result is re-indexed."""
        rpos = {r: a for a, r in enumerate(rows)}
        out = []
        for c in cols:
            col = self.cols[c]
            out.append({rpos[i]: x for i, x in col.items() if i in rpos})
        return SparseMatrix(len(rows), len(cols), out)

    def is_zero(self):
        return all(vec_is_zero(c) for c in self.cols)

    def is_upper_triangular(self):
        return all(i <= j for j, col in enumerate(self.cols) for i, x in col.items() if x)

    def diagonal(self):
        n = min(self.nrows, self.ncols)
        return [self.cols[j].get(j, 0) for j in range(n)]

    def map_entries(self, f):
        return SparseMatrix(self.nrows, self.ncols,
                            [vec_clean({i: f(x) for i, x in col.items()}) for col in self.cols])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix) or self.shape != other.shape:
            return False
        return all(vec_clean(a) == vec_clean(b) for a, b in zip(self.cols, other.cols))

    def __repr__(self):
        return "SparseMatrix(%d x %d, nnz=%d)" % (
            self.nrows, self.ncols, sum(len(c) for c in self.cols))


class RowSpace:
    """Reduced row-echelon basis of a growing subspace.

    Every stored row has a pivot index where it equals 1 and every other
    stored row vanishes. ``reduce(v)`` therefore strips all pivot coordinates
    from v in one pass; the residual is the projection of v onto the span of
    the non-pivot coordinates along the subspace.

    With ``track=True`` each row remembers how it was combined from the
    vectors passed to :meth:`add` (keyed by their tags), which is what
    kernels and coordinate solves need.

    ``priority`` orders candidate pivot indices (smallest first); by default
    the indices' natural order.
    """

    def __init__(self, track=False, priority=None):
        self.track = track
        self.priority = priority
        self.rows = {}      # pivot -> row vector
        self.combos = {}    # pivot -> combination of tags
        self._holders = {}  # index -> set of pivots whose row is nonzero there

    @property
    def rank(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return set(self.rows)

    def reduce(self, v, combo=None):
        """Return (residual, combo) with v == residual + span part.

        ``combo`` expresses the removed span part in terms of the tags of
        the added vectors (only meaningful when tracking)."""
        r = dict(v)
        c = {} if combo is None else dict(combo)
        hits = [k for k in r if k in self.rows]
        for k in hits:
            x = r.get(k)
            if not x:
                continue
            vec_iadd(r, self.rows[k], -x)
            if self.track:
                vec_iadd(c, self.combos[k], x)
        return r, c

    def contains(self, v):
        r, _ = self.reduce(v)
        return not r

    def _choose_pivot(self, r):
        if self.priority is None:
            return min(r)
        return min(r, key=self.priority)

    def add(self, v, tag=None):
        """Insert v; return True when it enlarged the span.

        When tracking and v is dependent, the kernel relation is available
        from :meth:`add_with_relation`."""
        return self.add_with_relation(v, tag)[0]

    def add_with_relation(self, v, tag=None):
        """Like :meth:`add`, also returning the linear relation found when v
        is dependent: a combo ``rel`` with Σ rel[t]·vec(t) = 0 (tracking only)."""
        start = {tag: 1} if self.track else {}
        r, c = self.reduce(v)
        if self.track:
            # v - Σ c·rows = r  =>  combo(r) = {tag: 1} - c
            comb = dict(start)
            vec_iadd(comb, c, -1)
        else:
            comb = {}
        if not r:
            return False, comb
        p = self._choose_pivot(r)
        inv = Fraction(1, r[p]) if isinstance(r[p], int) else 1 / r[p]
        row = {k: x * inv for k, x in r.items()}
        row[p] = 1
        if self.track:
            comb = vec_scale(comb, inv)
        # back-substitute p out of existing rows
        for q in list(self._holders.get(p, ())):
            other = self.rows[q]
            x = other.get(p)
            if not x:
                continue
            self._unindex(q, other)
            vec_iadd(other, row, -x)
            self._index(q, other)
            if self.track:
                vec_iadd(self.combos[q], comb, -x)
        self.rows[p] = row
        self._index(p, row)
        if self.track:
            self.combos[p] = comb
        return True, None

    def _index(self, pivot, row):
        for k in row:
            self._holders.setdefault(k, set()).add(pivot)

    def _unindex(self, pivot, row):
        for k in row:
            s = self._holders.get(k)
            if s is not None:
                s.discard(pivot)

    def coordinates(self, v):
        """Coefficients (by tag) expressing v in the added vectors, or None."""
        assert self.track
        r, c = self.reduce(v)
        if r:
            return None
        return vec_clean(c)


def rank(mat):
    """Rank of a SparseMatrix (column rank)."""
    rs = RowSpace()
    for col in mat.cols:
        if col:
            rs.add(col)
    return rs.rank


def rank_of_vectors(vectors):
    rs = RowSpace()
    for v in vectors:
        if v:
            rs.add(v)
    return rs.rank


def nullspace(mat):
    """Basis of {x : mat x = 0} as sparse vectors over column indices."""
    rs = RowSpace(track=True)
    kernel = []
    for j, col in enumerate(mat.cols):
        indep, rel = rs.add_with_relation(col, tag=j)
        if not indep:
            kernel.append(vec_clean(rel))
    return kernel


def image_basis(mat):
    rs = RowSpace()
    out = []
    for col in mat.cols:
        if col and rs.add(col):
            out.append(col)
    return out


def solve(mat, b):
    """Some x with mat x = b, or None when the system is inconsistent."""
    rs = RowSpace(track=True)
    for j, col in enumerate(mat.cols):
        if col:
            rs.add(col, tag=j)
    return rs.coordinates(b)


def cohomology_dims(chain_dims, maps):
    """dim H^p for a cochain complex.

    ``chain_dims[p]`` is dim C^p and ``maps[p]`` the differential C^p -> C^{p+1}
    (None or missing for zero maps)."""
    ranks = [rank(m) if m is not None else 0 for m in maps]
    out = []
    for p, dim in enumerate(chain_dims):
        r_out = ranks[p] if p < len(ranks) else 0
        r_in = ranks[p - 1] if p >= 1 and p - 1 < len(ranks) else 0
        out.append(dim - r_out - r_in)
    return out


def quotient_basis(subspace_vectors, candidates):
    """Pick candidates that are independent modulo span(subspace_vectors)."""
    rs = RowSpace()
    for v in subspace_vectors:
        if v:
            rs.add(v)
    picked = []
    for v in candidates:
        if rs.add(v):
            picked.append(v)
    return picked


# small dense matrices (lists of rows), used for frames and triangularization

def dense_identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def dense_zero(n, m=None):
    return [[0] * (n if m is None else m) for _ in range(n)]


def dense_mul(A, B):
    m = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k] and B[k][j]), 0)
             for j in range(m)] for i in range(len(A))]


def dense_add(A, B, c=1):
    return [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def dense_scale(A, c):
    return [[c * a for a in row] for row in A]


def dense_trace(A):
    return sum((A[i][i] for i in range(len(A))), 0)


def dense_transpose(A):
    return [list(col) for col in zip(*A)]


def dense_is_upper(A):
    return all(not A[i][j] for i in range(len(A)) for j in range(i))


def dense_is_lower(A):
    return all(not A[i][j] for i in range(len(A)) for j in range(i + 1, len(A)))


def dense_commute(A, B):
    return dense_mul(A, B) == dense_mul(B, A)


def dense_inverse(A):
    """Exact Gauss–Jordan inverse; raises SingularSystem."""
    n = len(A)
    M = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / Fraction(M[c][c]) if isinstance(M[c][c], int) else 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def dense_nullspace(A, ncols=None):
    """Kernel basis of a dense matrix (list of rows)."""
    ncols = len(A[0]) if A else (ncols or 0)
    cols = [dict() for _ in range(ncols)]
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            if x:
                cols[j][i] = x
    ker = nullspace(SparseMatrix(len(A), ncols, cols))
    return [[v.get(j, 0) for j in range(ncols)] for v in ker]
