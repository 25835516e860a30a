"""Exact dense linear algebra over the two-element field.

Matrices are stored row-major with 64 entries packed into each uint64
word; addition of entries is XOR and the scalar field is exactly {0, 1}.
Padding bits past the last column are kept at zero after every
operation, otherwise ranks silently corrupt.

Subspaces are always kept with a reduced-row-echelon basis, so two equal
subspaces are bit-identical and comparison is a byte compare.  All values
are immutable after construction; every operation returns fresh objects.
"""

from __future__ import annotations

import numpy as np

WORD_BITS = 64


class GF2Error(ValueError):
    """Raised on dimension mismatches and failed containment checks."""


def _word_count(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def _pack(dense: np.ndarray) -> np.ndarray:
    """Pack a {0,1} uint8 array into little-endian uint64 words per row."""
    rows, cols = dense.shape
    nw = _word_count(cols)
    if rows == 0 or nw == 0:
        return np.zeros((rows, nw), dtype=np.uint64)
    padded = np.zeros((rows, nw * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


def _unpack(words: np.ndarray, rows: int, cols: int) -> np.ndarray:
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :cols].copy()


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    w, s = divmod(col, WORD_BITS)
    return ((words[:, w] >> np.uint64(s)) & np.uint64(1)).astype(bool)


class BitMatrix:
    """A rows x cols matrix over GF(2), bit-packed row-major."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if words.shape != (rows, _word_count(cols)):
            raise GF2Error("word buffer does not match matrix shape")
        self.rows = rows
        self.cols = cols
        self.words = words
        words.setflags(write=False)

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _word_count(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        dense = np.eye(n, dtype=np.uint8)
        return cls.from_dense(dense)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.atleast_2d(np.asarray(dense, dtype=np.uint8)) & 1
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def vstack(cls, *mats: "BitMatrix") -> "BitMatrix":
        mats = [m for m in mats]
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise GF2Error("vstack needs equal column counts")
        words = np.concatenate([m.words for m in mats], axis=0)
        return cls(sum(m.rows for m in mats), cols, words.copy())

    # -- inspection --------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def get(self, i: int, j: int) -> int:
        w, s = divmod(j, WORD_BITS)
        return int((self.words[i, w] >> np.uint64(s)) & np.uint64(1))

    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise GF2Error("shape mismatch in addition")
        return BitMatrix(self.rows, self.cols, self.words ^ other.words)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        """GF(2) matrix product; column j of self selects row j of other."""
        if self.cols != other.rows:
            raise GF2Error(
                f"product shape mismatch: {self.shape} @ {other.shape}"
            )
        out = np.zeros((self.rows, other.words.shape[1]), dtype=np.uint64)
        for j in range(self.cols):
            mask = _column_bits(self.words, j)
            if mask.any():
                out[mask] ^= other.words[j]
        return BitMatrix(self.rows, other.cols, out)

    def mul_vector(self, vec: np.ndarray) -> np.ndarray:
        """Return self @ vec for a dense {0,1} vector (column convention)."""
        vec = np.asarray(vec, dtype=np.uint8) & 1
        if vec.shape != (self.cols,):
            raise GF2Error("vector length mismatch")
        vw = _pack(vec.reshape(1, -1))[0]
        if self.rows == 0:
            return np.zeros(0, dtype=np.uint8)
        par = np.bitwise_count(self.words & vw).sum(axis=1)
        return (par & 1).astype(np.uint8)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    # -- elimination -------------------------------------------------

    def rref(self):
        """Reduced row-echelon form.

        Returns (reduced, rank, pivots).  Row space is preserved and the
        result is the unique RREF of the input.
        """
        work = self.words.copy()
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            w, s = divmod(c, WORD_BITS)
            col = (work[r:, w] >> np.uint64(s)) & np.uint64(1)
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                work[[r, p]] = work[[p, r]]
            mask = _column_bits(work, c)
            mask[r] = False
            if mask.any():
                work[mask] ^= work[r]
            pivots.append(c)
            r += 1
        return BitMatrix(self.rows, self.cols, work), r, tuple(pivots)


def rref_rank(m: BitMatrix):
    """Convenience wrapper returning (reduced, rank, pivots)."""
    return m.rref()


def solve(a: BitMatrix, b: BitMatrix):
    """Solve a @ x = b over GF(2).

    Returns the pivot-based particular solution, or None if the system
    is inconsistent.  When a has full column rank the solution is unique.
    """
    if a.rows != b.rows:
        raise GF2Error("solve: row count mismatch")
    aug = BitMatrix.from_dense(
        np.concatenate([a.to_dense(), b.to_dense()], axis=1)
    )
    red, _, pivots = aug.rref()
    if any(p >= a.cols for p in pivots):
        return None
    dense = red.to_dense()
    x = np.zeros((a.cols, b.cols), dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = dense[i, a.cols:]
    return BitMatrix.from_dense(x) if a.cols else BitMatrix.zeros(0, b.cols)


def inverse(a: BitMatrix) -> BitMatrix:
    if a.rows != a.cols:
        raise GF2Error("inverse needs a square matrix")
    x = solve(a, BitMatrix.identity(a.rows))
    if x is None:
        raise GF2Error("matrix is singular")
    return x


class Subspace:
    """A subspace of F_2^n held as a reduced row-echelon basis.

    The canonical basis makes subspace equality a byte comparison, which
    the page computations rely on heavily.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: BitMatrix, pivots: tuple):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_rows(cls, ambient_dim: int, rows) -> "Subspace":
        if isinstance(rows, np.ndarray):
            rows = BitMatrix.from_dense(rows.reshape(-1, ambient_dim))
        if rows.cols != ambient_dim:
            raise GF2Error("spanning rows have wrong ambient dimension")
        red, rank, pivots = rows.rref()
        words = red.words[:rank].copy()
        return cls(ambient_dim, BitMatrix(rank, ambient_dim, words), pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, BitMatrix.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim, BitMatrix.identity(ambient_dim), tuple(range(ambient_dim))
        )

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce_rows(self, mat: BitMatrix) -> BitMatrix:
        """Reduce every row of mat modulo this subspace."""
        if mat.cols != self.ambient_dim:
            raise GF2Error("reduce_rows: ambient dimension mismatch")
        work = mat.words.copy()
        for i, p in enumerate(self.pivots):
            mask = _column_bits(work, p)
            if mask.any():
                work[mask] ^= self.basis.words[i]
        return BitMatrix(mat.rows, mat.cols, work)

    def contains_vector(self, vec: np.ndarray) -> bool:
        rem = self.reduce_rows(BitMatrix.from_dense(np.asarray(vec).reshape(1, -1)))
        return rem.is_zero()

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise GF2Error("containment: ambient dimension mismatch")
        if other.dim == 0:
            return True
        return self.reduce_rows(other.basis).is_zero()

    def row_coefficients(self, mat: BitMatrix) -> BitMatrix:
        """Coefficients of rows of mat in this RREF basis (rows must lie in it)."""
        if not self.reduce_rows(mat).is_zero():
            raise GF2Error("row_coefficients: rows not inside the subspace")
        dense = mat.to_dense()
        return BitMatrix.from_dense(dense[:, list(self.pivots)].reshape(mat.rows, self.dim))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise GF2Error("sum: ambient dimension mismatch")
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return Subspace.from_rows(a.ambient_dim, BitMatrix.vstack(a.basis, b.basis))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked-basis coefficient system."""
    if a.ambient_dim != b.ambient_dim:
        raise GF2Error("intersect: ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    stacked = BitMatrix.vstack(a.basis, b.basis)
    left_null = kernel_basis(stacked.transpose())
    if left_null.dim == 0:
        return Subspace.zero(a.ambient_dim)
    coeff_a = BitMatrix.from_dense(left_null.basis.to_dense()[:, : a.dim])
    return Subspace.from_rows(a.ambient_dim, coeff_a @ a.basis)


def subspace_combine(a: Subspace, b: Subspace, mode: str) -> Subspace:
    if mode == "sum":
        return subspace_sum(a, b)
    if mode == "intersect":
        return subspace_intersect(a, b)
    raise GF2Error(f"unknown combine mode {mode!r}")


def kernel_basis(m: BitMatrix) -> Subspace:
    """Right null space {x : m @ x = 0} with canonical basis."""
    red, _, pivots = m.rref()
    n = m.cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return Subspace.zero(n)
    dense_red = red.to_dense()
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(pivots):
            basis[t, p] = dense_red[i, f]
    return Subspace.from_rows(n, basis)


def annihilator(s: Subspace) -> Subspace:
    """All x with b . x = 0 for every basis row b of s."""
    return kernel_basis(s.basis)


def image(m: BitMatrix) -> Subspace:
    """Column space of m, i.e. the image of x -> m @ x."""
    return Subspace.from_rows(m.rows, m.transpose())


def apply_to_subspace(m: BitMatrix, s: Subspace) -> Subspace:
    """Image m(s) of a subspace under the column-convention map."""
    if m.cols != s.ambient_dim:
        raise GF2Error("apply: dimension mismatch")
    if s.dim == 0:
        return Subspace.zero(m.rows)
    return Subspace.from_rows(m.rows, s.basis @ m.transpose())


def preimage(m: BitMatrix, s: Subspace) -> Subspace:
    """The subspace {x : m @ x lies in s}."""
    if m.rows != s.ambient_dim:
        raise GF2Error("preimage: codomain dimension mismatch")
    ann = annihilator(s)
    if ann.dim == 0:
        return kernel_basis(BitMatrix.zeros(0, m.cols))
    return kernel_basis(ann.basis @ m)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    """dim(a/b); b must be contained in a."""
    if not a.contains(b):
        raise GF2Error("quotient_dim: not a subspace")
    return a.dim - b.dim


class QuotientCoords:
    """Canonical coset coordinates on a/b for a pair b <= a.

    Vectors of a are first written in the coefficients of a's RREF basis;
    b becomes a subspace of that coefficient space and the coset
    coordinates are the non-pivot coefficient positions (echelon-pivot
    complement, deterministic).
    """

    __slots__ = ("sup", "inner", "free")

    def __init__(self, a: Subspace, b: Subspace):
        if not a.contains(b):
            raise GF2Error("quotient coordinates: not a subspace")
        self.sup = a
        coeffs = (
            a.row_coefficients(b.basis)
            if b.dim
            else BitMatrix.zeros(0, a.dim)
        )
        self.inner = Subspace.from_rows(a.dim, coeffs)
        pivot_set = set(self.inner.pivots)
        self.free = [k for k in range(a.dim) if k not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.free)

    def project_rows(self, mat: BitMatrix) -> BitMatrix:
        """Coset coordinates of ambient row vectors (must lie in a)."""
        coeffs = self.sup.row_coefficients(mat)
        reduced = self.inner.reduce_rows(coeffs)
        dense = reduced.to_dense()
        take = dense[:, self.free] if self.dim else np.zeros((mat.rows, 0), np.uint8)
        return BitMatrix.from_dense(take.reshape(mat.rows, self.dim))

    def lift_rows(self) -> BitMatrix:
        """Ambient representatives of the coset coordinate basis."""
        if self.dim == 0:
            return BitMatrix.zeros(0, self.sup.ambient_dim)
        sel = np.zeros((self.dim, self.sup.dim), dtype=np.uint8)
        for t, k in enumerate(self.free):
            sel[t, k] = 1
        return BitMatrix.from_dense(sel) @ self.sup.basis


def induced_map(
    m: BitMatrix,
    dom_a: Subspace,
    dom_b: Subspace,
    cod_c: Subspace,
    cod_d: Subspace,
) -> BitMatrix:
    """Matrix of the induced map dom_a/dom_b -> cod_c/cod_d.

    All four containments are checked; the result is written in the
    canonical coset coordinates of QuotientCoords on both sides.
    """
    if m.cols != dom_a.ambient_dim or m.rows != cod_c.ambient_dim:
        raise GF2Error("induced_map: matrix shape does not match ambients")
    qd = QuotientCoords(dom_a, dom_b)
    qc = QuotientCoords(cod_c, cod_d)
    mt = m.transpose()
    if dom_a.dim:
        img_a = dom_a.basis @ mt
        if not cod_c.reduce_rows(img_a).is_zero():
            raise GF2Error("induced_map: m does not map dom_a into cod_c")
    if dom_b.dim:
        img_b = dom_b.basis @ mt
        if not cod_d.reduce_rows(img_b).is_zero():
            raise GF2Error("induced_map: m does not map dom_b into cod_d")
    if qd.dim == 0:
        return BitMatrix.zeros(qc.dim, 0)
    reps = qd.lift_rows()
    images = reps @ mt
    cols = qc.project_rows(images)
    return cols.transpose()
