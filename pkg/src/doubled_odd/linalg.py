"""Exact sparse matrices and rational span arithmetic.

Everything here works over the rationals: matrix entries are Python ints or
`fractions.Fraction` values, never floats.  Matrices are stored row-major as
nested dicts {row: {col: value}} with no explicit zeros, which keeps products
of the very sparse 0/1 matrices used elsewhere cheap.  Subspaces of vectorized
matrices are kept in fully reduced row echelon form, so a subspace has exactly
one representation and basis comparisons are plain equality.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


class ShapeMismatchError(ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class DimCapExceededError(RuntimeError):
    """An algebra closure grew past its dimension cap."""


class NotClosedError(RuntimeError):
    """A span that was assumed multiplicatively closed is not."""


def _norm(v):
    # keep arithmetic on ints whenever a Fraction is integral
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def _div(a, b):
    return _norm(Fraction(a) / Fraction(b))


class SparseExactMatrix:
    """Immutable-by-convention sparse matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]):
        rows: dict[int, dict[int, object]] = {}
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError(f"entry ({r}, {c}) outside a {nrows} x {ncols} matrix")
            v = _norm(v)
            if v:
                rows.setdefault(r, {})[c] = v
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int):
        return cls(nrows, ncols, {})

    def get(self, r: int, c: int):
        row = self._rows.get(r)
        if row is None:
            return 0
        return row.get(c, 0)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def entries(self) -> Iterator[tuple[int, int, object]]:
        """Yield (row, col, value) sorted by (row, col)."""
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def transpose(self) -> "SparseExactMatrix":
        out: dict[int, dict[int, object]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                out.setdefault(c, {})[r] = v
        return SparseExactMatrix(self.ncols, self.nrows, out)

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    __hash__ = None

    def __add__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ShapeMismatchError(
                f"cannot add {self.nrows} x {self.ncols} and {other.nrows} x {other.ncols}"
            )
        out = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            dst = out.setdefault(r, {})
            for c, v in row.items():
                nv = _norm(dst.get(c, 0) + v)
                if nv:
                    dst[c] = nv
                else:
                    dst.pop(c, None)
            if not dst:
                del out[r]
        return SparseExactMatrix(self.nrows, self.ncols, out)

    def __sub__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        return self + other.scale(-1)

    def scale(self, k) -> "SparseExactMatrix":
        k = _norm(k)
        if not k:
            return SparseExactMatrix(self.nrows, self.ncols, {})
        out = {
            r: {c: _norm(k * v) for c, v in row.items()}
            for r, row in self._rows.items()
        }
        return SparseExactMatrix(self.nrows, self.ncols, out)

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.ncols != other.nrows:
            raise ShapeMismatchError(
                f"cannot multiply {self.nrows} x {self.ncols} by {other.nrows} x {other.ncols}"
            )
        orows = other._rows
        out: dict[int, dict[int, object]] = {}
        for r, arow in self._rows.items():
            acc: dict[int, object] = {}
            acc_get = acc.get
            for w, av in arow.items():
                brow = orows.get(w)
                if not brow:
                    continue
                if av == 1:
                    for c, bv in brow.items():
                        x = acc_get(c)
                        acc[c] = bv if x is None else x + bv
                else:
                    for c, bv in brow.items():
                        x = acc_get(c)
                        acc[c] = av * bv if x is None else x + av * bv
            acc = {c: _norm(v) for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseExactMatrix(self.nrows, other.ncols, out)

    def __repr__(self):
        return f"SparseExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def vectorize(m: SparseExactMatrix) -> dict[int, object]:
    """Row-major flattening of a matrix to a sparse vector {index: value}."""
    ncols = m.ncols
    vec: dict[int, object] = {}
    for r, row in m._rows.items():
        base = r * ncols
        for c, v in row.items():
            vec[base + c] = v
    return vec


def matrix_from_vector(vec: dict[int, object], nrows: int, ncols: int) -> SparseExactMatrix:
    rows: dict[int, dict[int, object]] = {}
    for idx, v in vec.items():
        if v:
            rows.setdefault(idx // ncols, {})[idx % ncols] = v
    return SparseExactMatrix(nrows, ncols, rows)


class SpanBasis:
    """A rational subspace in canonical reduced row echelon form.

    Rows are sparse vectors keyed by their pivot column; every pivot entry is
    1 and every row is zero at all other pivot columns, so the stored rows are
    the unique RREF basis of the subspace and two SpanBasis objects are equal
    iff they span the same subspace of the same ambient space.
    """

    __slots__ = ("ambient_dim", "_rows")

    def __init__(self, ambient_dim: int):
        if ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        self.ambient_dim = ambient_dim
        self._rows: dict[int, dict[int, object]] = {}

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> dict[int, int]:
        """Map pivot column -> row index (rows ordered by pivot column)."""
        return {p: i for i, p in enumerate(sorted(self._rows))}

    @property
    def rows(self) -> list[dict[int, object]]:
        """Basis rows as sparse dicts, ordered by pivot column."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def copy(self) -> "SpanBasis":
        b = SpanBasis(self.ambient_dim)
        b._rows = {p: dict(row) for p, row in self._rows.items()}
        return b

    def __eq__(self, other):
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    __hash__ = None

    def reduce(self, vec: dict[int, object]) -> dict[int, object]:
        """Fully reduce a sparse vector against the basis (input not mutated)."""
        out = dict(vec)
        rows = self._rows
        hits = [c for c in out if c in rows]
        # rows are zero at every other pivot column, so one pass suffices and
        # the reduction order does not matter; sort to keep runs reproducible
        for col in sorted(hits):
            coeff = out.get(col, 0)
            if not coeff:
                continue
            for c, v in rows[col].items():
                nv = _norm(out.get(c, 0) - coeff * v)
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out

    def reduce_with_coefficients(self, vec):
        """Reduce and also report {pivot column: coefficient} of the rows used."""
        out = dict(vec)
        rows = self._rows
        coeffs: dict[int, object] = {}
        for col in sorted(c for c in out if c in rows):
            coeff = out.get(col, 0)
            if not coeff:
                continue
            coeffs[col] = coeff
            for c, v in rows[col].items():
                nv = _norm(out.get(c, 0) - coeff * v)
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out, coeffs

    def coordinates(self, vec: dict[int, object]) -> list | None:
        """Coefficients of vec over the basis rows (pivot order), or None."""
        residue, coeffs = self.reduce_with_coefficients(vec)
        if residue:
            return None
        order = sorted(self._rows)
        return [coeffs.get(p, 0) for p in order]

    def contains_vector(self, vec: dict[int, object]) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict[int, object]) -> bool:
        """Adjoin a vector; returns True iff the dimension grew."""
        for c in vec:
            if not 0 <= c < self.ambient_dim:
                raise ValueError(f"coordinate {c} outside ambient dimension {self.ambient_dim}")
        red = self.reduce(vec)
        if not red:
            return False
        piv = min(red)
        lead = red[piv]
        if lead != 1:
            red = {c: _div(v, lead) for c, v in red.items()}
        # clear the new pivot column from existing rows to stay fully reduced
        for row in self._rows.values():
            cv = row.get(piv)
            if cv:
                for c, v in red.items():
                    nv = _norm(row.get(c, 0) - cv * v)
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        self._rows[piv] = red
        return True

    def inserted_row(self, vec: dict[int, object]):
        """Like insert, but returns the normalized stored row (or None)."""
        red = self.reduce(vec)
        if not red:
            return None
        self.insert(red)
        return dict(self._rows[min(red)])

    def __repr__(self):
        return f"SpanBasis(dim={self.dimension}, ambient={self.ambient_dim})"


def span(matrices: Iterable[SparseExactMatrix]) -> SpanBasis:
    """RREF basis of the span of the vectorized matrices."""
    mats = list(matrices)
    if not mats:
        return SpanBasis(0)
    nrows, ncols = mats[0].nrows, mats[0].ncols
    basis = SpanBasis(nrows * ncols)
    for m in mats:
        if m.nrows != nrows or m.ncols != ncols:
            raise ShapeMismatchError(
                f"span over mixed shapes: {nrows} x {ncols} vs {m.nrows} x {m.ncols}"
            )
        basis.insert(vectorize(m))
    return basis


def contains(basis: SpanBasis, m: SparseExactMatrix) -> bool:
    """Exact membership of a matrix in a span of vectorized matrices."""
    if m.nrows * m.ncols != basis.ambient_dim:
        raise ShapeMismatchError(
            f"matrix of {m.nrows * m.ncols} entries against ambient {basis.ambient_dim}"
        )
    return basis.contains_vector(vectorize(m))


@dataclass
class ClosureResult:
    """Outcome of algebra_closure.

    iterations counts the pairwise products that were evaluated; stabilized is
    True when the product worklist was exhausted below the dimension cap.
    """

    basis: SpanBasis
    iterations: int
    stabilized: bool


def algebra_closure(
    generators: Iterable[SparseExactMatrix],
    dim_cap: int | None = None,
) -> ClosureResult:
    """Smallest span containing the identity and generators that is closed
    under matrix multiplication.

    Starts from span(generators + identity) and repeatedly adjoins pairwise
    products of the current basis in a deterministic worklist order.  Each
    adjoined product is stored in its reduced, frozen form and never revised,
    which keeps later products sparse; by bilinearity the span of all pairwise
    products of these representatives equals the span of all products of the
    subspace with itself, so an exhausted worklist certifies closure.

    Raises DimCapExceededError as soon as the dimension passes dim_cap
    (default: the full ambient dimension, which can never be exceeded).
    """
    gens = list(generators)
    if not gens:
        raise ValueError("algebra_closure needs at least one generator")
    n = gens[0].nrows
    for gm in gens:
        if gm.nrows != n or gm.ncols != n:
            raise ShapeMismatchError("algebra closure needs square matrices of one size")
    ambient = n * n
    if dim_cap is None:
        dim_cap = ambient

    basis = SpanBasis(ambient)
    reps: list[SparseExactMatrix] = []
    pending: list[tuple[int, int]] = []
    head = 0

    def adjoin(mat: SparseExactMatrix) -> None:
        stored = basis.inserted_row(vectorize(mat))
        if stored is None:
            return
        if basis.dimension > dim_cap:
            raise DimCapExceededError(
                f"closure dimension passed the cap {dim_cap}"
            )
        k = len(reps)
        reps.append(matrix_from_vector(stored, n, n))
        for i in range(k + 1):
            pending.append((i, k))
        for i in range(k):
            pending.append((k, i))

    adjoin(SparseExactMatrix.identity(n))
    for gm in gens:
        adjoin(gm)

    iterations = 0
    while head < len(pending):
        a, b = pending[head]
        head += 1
        iterations += 1
        adjoin(reps[a] @ reps[b])

    return ClosureResult(basis=basis, iterations=iterations, stabilized=True)


def centralizer_within(basis: SpanBasis) -> SpanBasis:
    """Elements of a multiplicatively closed span commuting with all of it.

    The span must consist of vectorized square matrices and be closed under
    multiplication (a cheap spot check plus the coordinate solves enforce
    this; NotClosedError otherwise).  Solves x B_k = B_k x over the basis
    coordinates for every basis element B_k and returns the span of the
    solutions, again as vectorized matrices.
    """
    d = basis.dimension
    ambient = basis.ambient_dim
    n = int(round(ambient ** 0.5))
    if n * n != ambient:
        raise ValueError(f"ambient dimension {ambient} is not a perfect square")
    result = SpanBasis(ambient)
    if d == 0:
        return result

    mats = [matrix_from_vector(row, n, n) for row in basis.rows]

    spot = min(d, 3)
    for i in range(spot):
        for j in range(spot):
            if not basis.contains_vector(vectorize(mats[i] @ mats[j])):
                raise NotClosedError("basis fails a multiplicative closure spot check")

    def coords_of(mat: SparseExactMatrix) -> list:
        co = basis.coordinates(vectorize(mat))
        if co is None:
            raise NotClosedError("product of basis elements left the span")
        return co

    # Candidate commutant coefficients start as all of Q^d and get filtered by
    # one linear functional per (basis element, coordinate position) pair.
    null_vecs: list[dict[int, object]] = [{a: 1} for a in range(d)]
    for k in range(d):
        if not null_vecs:
            break
        mk = mats[k]
        equations: dict[int, dict[int, object]] = {}
        for a in range(d):
            left = coords_of(mats[a] @ mk)
            right = coords_of(mk @ mats[a])
            for e in range(d):
                delta = _norm(left[e] - right[e])
                if delta:
                    equations.setdefault(e, {})[a] = delta
        for e in sorted(equations):
            eq = equations[e]
            if not null_vecs:
                break
            vals = []
            for nv in null_vecs:
                s = 0
                for a, coef in eq.items():
                    x = nv.get(a)
                    if x:
                        s += coef * x
                vals.append(_norm(s))
            if not any(vals):
                continue
            p = next(i for i, v in enumerate(vals) if v)
            vp = vals[p]
            pivot_vec = null_vecs[p]
            survivors = []
            for i, nv in enumerate(null_vecs):
                if i == p:
                    continue
                if vals[i]:
                    factor = _div(vals[i], vp)
                    merged = dict(nv)
                    for a, v in pivot_vec.items():
                        nv2 = _norm(merged.get(a, 0) - factor * v)
                        if nv2:
                            merged[a] = nv2
                        else:
                            merged.pop(a, None)
                    survivors.append(merged)
                else:
                    survivors.append(nv)
            null_vecs = survivors

    for nv in null_vecs:
        combo: dict[int, object] = {}
        for a, coef in nv.items():
            for idx, v in vectorize(mats[a]).items():
                nv2 = _norm(combo.get(idx, 0) + coef * v)
                if nv2:
                    combo[idx] = nv2
                else:
                    combo.pop(idx, None)
        result.insert(combo)
    return result


def write_coord_text(m: SparseExactMatrix, path) -> None:
    """Write a matrix in the coordinate text format.

    Header line "nrows ncols nnz", then one "row col value" line per nonzero
    entry sorted by (row, col); values are exact integers or p/q rationals.
    """
    lines = [f"{m.nrows} {m.ncols} {m.nnz}"]
    for r, c, v in m.entries():
        lines.append(f"{r} {c} {v}")
    text = "\n".join(lines) + "\n"
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write matrix to {path}: {exc}") from exc


def read_coord_text(path) -> SparseExactMatrix:
    """Read a matrix written by write_coord_text."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read matrix from {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    try:
        nrows, ncols, nnz = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"{path}: malformed header {lines[0]!r}") from exc
    if len(lines) - 1 != nnz:
        raise ValueError(f"{path}: header promises {nnz} entries, found {len(lines) - 1}")
    entries = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3:
            raise ValueError(f"{path}: malformed entry line {ln!r}")
        r, c = int(toks[0]), int(toks[1])
        entries.append((r, c, _norm(Fraction(toks[2]))))
    return SparseExactMatrix.from_entries(nrows, ncols, entries)
