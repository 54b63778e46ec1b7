"""Exact linear algebra over the rationals and prime fields.

Vectors are sparse maps ``index -> scalar`` (zeros never stored); matrices
are lists of sparse rows or columns.  Row reduction is deterministic —
leftmost nonzero pivot, rows processed in input order — so every derived
basis (kernels, intersections, quotient representatives) is reproducible
byte for byte.  Dense prime-field eliminations are delegated to the
compiled kernel selected in :mod:`koszulkit.backend`; small systems and all
rational ones also have a dense path below the ``DENSE_LIMIT`` ambient.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import backend
from .fields import Field, PrimeField

SparseVec = Dict[int, object]

#: below this ambient dimension every elimination goes dense
DENSE_LIMIT = 64
#: prime-field eliminations go through the dense kernel up to this ambient
DENSE_MOD_LIMIT = 8192


class AmbientMismatchError(ValueError):
    """Raised when subspaces of different ambient spaces are combined."""


def vec_is_zero(v: SparseVec) -> bool:
    return not v


def vec_scale(v: SparseVec, c, field: Field) -> SparseVec:
    if field.is_zero(c):
        return {}
    return {i: field.mul(x, c) for i, x in v.items()}


def vec_add_scaled(u: SparseVec, v: SparseVec, c, field: Field) -> SparseVec:
    """u + c*v as a new sparse vector."""
    out = dict(u)
    for i, x in v.items():
        y = field.add(out.get(i, field.zero), field.mul(c, x))
        if field.is_zero(y):
            out.pop(i, None)
        else:
            out[i] = y
    return out


def vec_add(u: SparseVec, v: SparseVec, field: Field) -> SparseVec:
    return vec_add_scaled(u, v, field.one, field)


def vec_sub(u: SparseVec, v: SparseVec, field: Field) -> SparseVec:
    return vec_add_scaled(u, v, field.neg(field.one), field)


def vec_neg(v: SparseVec, field: Field) -> SparseVec:
    return {i: field.neg(x) for i, x in v.items()}


def vec_from_dense(row: Sequence, field: Field) -> SparseVec:
    return {i: x for i, x in enumerate(row) if not field.is_zero(x)}


def vec_to_dense(v: SparseVec, ambient: int, field: Field) -> list:
    out = [field.zero] * ambient
    for i, x in v.items():
        out[i] = x
    return out


def vec_equal(u: SparseVec, v: SparseVec, field: Field) -> bool:
    return vec_is_zero(vec_sub(u, v, field))


def _rref_sparse(rows: Iterable[SparseVec], field: Field) -> Tuple[List[SparseVec], List[int]]:
    """Sparse reduced row echelon form; deterministic in the input order."""
    by_pivot: Dict[int, SparseVec] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = by_pivot.get(lead)
            if piv is None:
                break
            row = vec_add_scaled(row, piv, field.neg(row[lead]), field)
        if not row:
            continue
        lead = min(row)
        inv = field.inv(row[lead])
        row = vec_scale(row, inv, field)
        by_pivot[lead] = row
    pivots = sorted(by_pivot)
    # back-substitute to the reduced form
    for k in range(len(pivots) - 1, -1, -1):
        piv_col = pivots[k]
        row = by_pivot[piv_col]
        for other_col in list(row):
            if other_col != piv_col and other_col in by_pivot:
                row = vec_add_scaled(row, by_pivot[other_col], field.neg(row[other_col]), field)
        by_pivot[piv_col] = row
    return [by_pivot[c] for c in pivots], pivots


def _rref_dense_rational(rows: List[SparseVec], ambient: int, field: Field):
    m = [vec_to_dense(r, ambient, field) for r in rows]
    nrows = len(m)
    pivots: List[int] = []
    r = 0
    for c in range(ambient):
        if r >= nrows:
            break
        rr = next((i for i in range(r, nrows) if not field.is_zero(m[i][c])), -1)
        if rr < 0:
            continue
        if rr != r:
            m[r], m[rr] = m[rr], m[r]
        inv = field.inv(m[r][c])
        if inv != field.one:
            m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [vec_from_dense(m[i], field) for i in range(r)], pivots


def rref(rows: Sequence[SparseVec], ambient: int, field: Field) -> Tuple[List[SparseVec], List[int]]:
    """Reduced row echelon form; routes to the dense kernel when worthwhile."""
    rows = list(rows)
    if not rows:
        return [], []
    if isinstance(field, PrimeField) and ambient <= DENSE_MOD_LIMIT:
        dense = [vec_to_dense(r, ambient, field) for r in rows]
        red, pivots = backend.rref_mod(dense, ambient, field.p)
        return [vec_from_dense(r, field) for r in red], pivots
    if ambient <= DENSE_LIMIT:
        return _rref_dense_rational(rows, ambient, field)
    return _rref_sparse(rows, field)


class Subspace:
    """A linear subspace held as a reduced-echelon row basis."""

    def __init__(self, ambient: int, field: Field, rows: List[SparseVec], pivots: List[int]):
        self.ambient = ambient
        self.field = field
        self.rows = rows
        self.pivots = pivots
        self._pivot_pos = {c: k for k, c in enumerate(pivots)}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient} over {self.field})"

    def reduce(self, v: SparseVec) -> SparseVec:
        """Eliminate this subspace's pivots from v; zero iff v is a member."""
        v = dict(v)
        field = self.field
        for c in self.pivots:
            x = v.get(c)
            if x is not None:
                v = vec_add_scaled(v, self.rows[self._pivot_pos[c]], field.neg(x), field)
        return v

    def contains(self, v: SparseVec) -> bool:
        return vec_is_zero(self.reduce(v))

    def coords(self, v: SparseVec) -> Optional[List[object]]:
        """Coordinates of v in the echelon basis, or None if v is outside."""
        if not self.contains(v):
            return None
        return [v.get(c, self.field.zero) for c in self.pivots]

    def basis_checked(self) -> List[SparseVec]:
        return list(self.rows)


def echelonize(rows: Iterable[SparseVec], ambient: int, field: Field) -> Subspace:
    """Reduced echelon subspace spanned by the given rows."""
    rows = list(rows)
    for row in rows:
        for i in row:
            if i < 0 or i >= ambient:
                raise AmbientMismatchError(f"coordinate {i} outside ambient {ambient}")
    red, pivots = rref(rows, ambient, field)
    return Subspace(ambient, field, red, pivots)


def zero_subspace(ambient: int, field: Field) -> Subspace:
    return Subspace(ambient, field, [], [])


def full_subspace(ambient: int, field: Field) -> Subspace:
    rows = [{i: field.one} for i in range(ambient)]
    return Subspace(ambient, field, rows, list(range(ambient)))


class LinearMap:
    """A linear map in coordinates, stored column-wise (images of basis vectors)."""

    def __init__(self, domain_dim: int, codomain_dim: int, cols: List[SparseVec], field: Field):
        if len(cols) != domain_dim:
            raise ValueError("one column per domain basis vector required")
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim
        self.cols = cols
        self.field = field

    @classmethod
    def zero(cls, domain_dim: int, codomain_dim: int, field: Field) -> "LinearMap":
        return cls(domain_dim, codomain_dim, [{} for _ in range(domain_dim)], field)

    @classmethod
    def identity(cls, dim: int, field: Field) -> "LinearMap":
        return cls(dim, dim, [{i: field.one} for i in range(dim)], field)

    def apply(self, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        field = self.field
        for i, c in v.items():
            out = vec_add_scaled(out, self.cols[i], c, field)
        return out

    def rows(self) -> List[SparseVec]:
        out: List[SparseVec] = [dict() for _ in range(self.codomain_dim)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self o inner."""
        self.field.require_same(inner.field)
        if inner.codomain_dim != self.domain_dim:
            raise AmbientMismatchError("composition dimension mismatch")
        cols = [self.apply(c) for c in inner.cols]
        return LinearMap(inner.domain_dim, self.codomain_dim, cols, self.field)

    def rank(self) -> int:
        return image(self).dim


def kernel(m: LinearMap) -> Subspace:
    """Null space of a linear map; rank-nullity holds exactly."""
    field = m.field
    red, pivots = rref(m.rows(), m.domain_dim, field)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.domain_dim) if c not in pivot_set]
    basis: List[SparseVec] = []
    for f in free_cols:
        v: SparseVec = {f: field.one}
        for k, c in enumerate(pivots):
            x = red[k].get(f)
            if x is not None:
                v[c] = field.neg(x)
        basis.append(v)
    return echelonize(basis, m.domain_dim, field)


def image(m: LinearMap) -> Subspace:
    return echelonize(m.cols, m.codomain_dim, m.field)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    u.field.require_same(v.field)
    if u.ambient != v.ambient:
        raise AmbientMismatchError(f"ambient mismatch: {u.ambient} vs {v.ambient}")
    field = u.field
    if u.dim == 0 or v.dim == 0:
        return zero_subspace(u.ambient, field)
    # solve sum a_i u_i - sum b_j v_j = 0; columns indexed by (a, b)
    cols: List[SparseVec] = [dict(r) for r in u.rows]
    cols += [vec_neg(r, field) for r in v.rows]
    m = LinearMap(u.dim + v.dim, u.ambient, cols, field)
    ker = kernel(m)
    vecs = []
    for w in ker.rows:
        vec: SparseVec = {}
        for i, c in w.items():
            if i < u.dim:
                vec = vec_add_scaled(vec, u.rows[i], c, field)
        vecs.append(vec)
    return echelonize(vecs, u.ambient, field)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u.field.require_same(v.field)
    if u.ambient != v.ambient:
        raise AmbientMismatchError(f"ambient mismatch: {u.ambient} vs {v.ambient}")
    return echelonize(list(u.rows) + list(v.rows), u.ambient, u.field)


class SpanSolver:
    """Solve for coordinates of vectors in the span of a fixed sequence.

    The spanning vectors need not be independent; coordinates returned are
    the deterministic ones obtained from the tracked row reduction.
    """

    def __init__(self, vectors: Sequence[SparseVec], ambient: int, field: Field):
        self.vectors = list(vectors)
        self.ambient = ambient
        self.field = field
        n = len(self.vectors)
        # reduce rows while tracking the transform in trailing coordinates
        shifted = []
        for k, vec in enumerate(self.vectors):
            row = dict(vec)
            row[ambient + k] = field.one
            shifted.append(row)
        self._red, self._pivots = _rref_sparse(shifted, field)
        self._n = n

    def solve(self, target: SparseVec) -> Optional[List[object]]:
        """Coefficients c with sum c_k * vectors[k] = target, or None."""
        field = self.field
        v = dict(target)
        coeffs: SparseVec = {}
        for k, c in enumerate(self._pivots):
            if c >= self.ambient:
                break
            x = v.get(c)
            if x is not None:
                row = self._red[k]
                v = vec_add_scaled(v, {i: y for i, y in row.items() if i < self.ambient},
                                   field.neg(x), field)
                coeffs = vec_add_scaled(coeffs, {i - self.ambient: y for i, y in row.items()
                                                 if i >= self.ambient}, x, field)
        if v:
            return None
        return [coeffs.get(k, field.zero) for k in range(self._n)]


class NotInSubspaceError(ValueError):
    """Raised when a vector expected inside a subspace is not a member."""


class QuotientSpace:
    """Quotient Z/B with deterministic representatives.

    Representatives extend an echelon basis of B to Z: they are the reduced
    echelon vectors of Z whose pivots are not pivots of B, in pivot order.
    """

    def __init__(self, z: Subspace, b: Subspace):
        z.field.require_same(b.field)
        if z.ambient != b.ambient:
            raise AmbientMismatchError("numerator and denominator ambient mismatch")
        for row in b.rows:
            if not z.contains(row):
                raise NotInSubspaceError("denominator is not contained in numerator")
        self.z = z
        self.b = b
        b_pivots = set(b.pivots)
        self.rep_pivots = [c for c in z.pivots if c not in b_pivots]
        self.representatives = [z.rows[z._pivot_pos[c]] for c in self.rep_pivots]

    @property
    def dim(self) -> int:
        return self.z.dim - self.b.dim

    def coords(self, v: SparseVec) -> List[object]:
        """Coordinates of v modulo B in the representative basis."""
        if not self.z.contains(v):
            raise NotInSubspaceError("not a cocycle/cycle: vector outside the numerator")
        reduced = self.b.reduce(v)
        return [reduced.get(c, self.z.field.zero) for c in self.rep_pivots]

    def lift(self, coords: Sequence) -> SparseVec:
        field = self.z.field
        out: SparseVec = {}
        for c, rep in zip(coords, self.representatives):
            out = vec_add_scaled(out, rep, c, field)
        return out


def quotient_coords(q: QuotientSpace, v: SparseVec) -> List[object]:
    return q.coords(v)
