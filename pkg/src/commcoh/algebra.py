"""Structure-constant algebras over GF(2) and their coefficient modules.

A bracket table stores [b_i, b_j] as a vector of coordinates for every
ordered basis pair.  Classification (commutative / alternating / Jacobi
/ left Leibniz) is recomputed from the table, never trusted from input.
Alternativity is checked as c[i][i] = 0 together with commutativity, so
it is the polynomial identity [x,x] = 0 over every field extension and
not merely a statement about the finitely many vectors of F_2^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gf2 import BitMatrix, GF2Error, Subspace, inverse, solve

__all__ = [
    "BracketTable",
    "AlgebraClass",
    "ModuleSpec",
    "BimoduleSpec",
    "ModuleAxiomError",
    "classify_algebra",
    "check_module_axioms",
    "trivial_module",
    "flambda_module",
    "coadjoint_module",
    "adjoint_module",
    "symmetrize",
    "make_module",
    "leibniz_kernel",
    "derived_span",
    "IdealVerdict",
    "is_ideal",
    "SubalgebraSplit",
    "quotient_algebra",
    "change_basis",
    "module_change_basis",
]


class ModuleAxiomError(ValueError):
    """A constructed module violates its defining axiom."""

    def __init__(self, axiom: str, pair):
        self.axiom = axiom
        self.pair = pair
        super().__init__(f"axiom {axiom} fails on basis pair {pair}")


class BracketTable:
    """A d-dimensional algebra given by c[i, j] = coordinates of [b_i, b_j]."""

    __slots__ = ("dim", "c")

    def __init__(self, c):
        c = np.asarray(c, dtype=np.uint8) & 1
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2]:
            raise GF2Error("bracket table must be d x d x d")
        self.dim = c.shape[0]
        self.c = c
        c.setflags(write=False)

    @classmethod
    def zero(cls, dim: int) -> "BracketTable":
        return cls(np.zeros((dim, dim, dim), dtype=np.uint8))

    @classmethod
    def from_entries(cls, dim: int, entries: dict) -> "BracketTable":
        """entries maps (i, j) -> coordinate vector or list of indices."""
        c = np.zeros((dim, dim, dim), dtype=np.uint8)
        for (i, j), val in entries.items():
            val = np.asarray(val)
            if val.shape == (dim,):
                c[i, j] = val & 1
            else:
                for k in val.reshape(-1):
                    c[i, j, int(k)] ^= 1
        return cls(c)

    def bracket(self, x, y) -> np.ndarray:
        """[x, y] for dense coordinate vectors x, y."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise GF2Error("bracket arguments must be coordinate vectors")
        return (np.einsum("i,j,ijk->k", x, y, self.c.astype(np.int64)) & 1).astype(
            np.uint8
        )

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.dim, self.c.tobytes()))

    def __repr__(self):
        return f"BracketTable(dim={self.dim})"


@dataclass(frozen=True)
class AlgebraClass:
    commutative: bool
    alternating: bool
    jacobi: bool
    left_leibniz: bool

    @property
    def is_lie(self) -> bool:
        return self.alternating and self.jacobi

    @property
    def is_commutative_lie(self) -> bool:
        return self.commutative and self.jacobi


def classify_algebra(t: BracketTable) -> AlgebraClass:
    c = t.c.astype(np.int64)
    d = t.dim
    commutative = np.array_equal(t.c, t.c.transpose(1, 0, 2))
    alternating = commutative and not any(t.c[i, i].any() for i in range(d))
    jacobi = True
    left_leibniz = True
    for i in range(d):
        for j in range(d):
            for k in range(d):
                # [b_i, v] = v @ c[i]  (row u of c[i] is [b_i, b_u])
                t1 = c[j, k] @ c[i]  # [b_i, [b_j, b_k]]
                t2 = c[k, i] @ c[j]  # [b_j, [b_k, b_i]]
                t3 = c[i, j] @ c[k]  # [b_k, [b_i, b_j]]
                if ((t1 + t2 + t3) % 2).any():
                    jacobi = False
                # [[b_i, b_j], b_k] = sum_u c[i,j,u] c[u,k]
                lhs = t1 % 2
                rhs = (np.einsum("u,uk->k", c[i, j], c[:, k, :]) + c[i, k] @ c[j]) % 2
                if not np.array_equal(lhs, rhs):
                    left_leibniz = False
    return AlgebraClass(bool(commutative), bool(alternating), jacobi, left_leibniz)


@dataclass(frozen=True)
class ModuleSpec:
    """Left module: rho[i] is the m x m action matrix of b_i."""

    dim: int
    rho: np.ndarray  # (d, m, m) uint8

    def action(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.rho.shape[0],):
            raise GF2Error("action argument must be an algebra coordinate vector")
        return (np.einsum("i,imn->mn", x, self.rho.astype(np.int64)) & 1).astype(
            np.uint8
        )


@dataclass(frozen=True)
class BimoduleSpec:
    """Left and right actions; symmetric when right equals left."""

    dim: int
    left: np.ndarray
    right: np.ndarray

    @property
    def is_symmetric(self) -> bool:
        return np.array_equal(self.left, self.right)

    def action(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.left.shape[0],):
            raise GF2Error("action argument must be an algebra coordinate vector")
        return (np.einsum("i,imn->mn", x, self.left.astype(np.int64)) & 1).astype(
            np.uint8
        )


def _act(rho: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return (np.einsum("i,imn->mn", vec.astype(np.int64), rho.astype(np.int64)) & 1).astype(np.uint8)


@dataclass(frozen=True)
class ModuleCheck:
    ok: bool
    axiom: str | None = None
    pair: tuple | None = None


def check_module_axioms(t: BracketTable, mod) -> ModuleCheck:
    """Verify the module axiom (and, for bimodules, all three of them).

    Returns a verdict carrying the first violating basis pair on failure.
    """
    d = t.dim
    if isinstance(mod, ModuleSpec):
        left = mod.rho
        right = None
    elif isinstance(mod, BimoduleSpec):
        left = mod.left
        right = mod.right
    else:
        raise GF2Error("expected ModuleSpec or BimoduleSpec")
    if left.shape[0] != d:
        raise GF2Error("module has wrong number of action matrices")
    li = left.astype(np.int64)
    for i in range(d):
        for j in range(d):
            lhs = _act(left, t.c[i, j])
            rhs = (li[i] @ li[j] + li[j] @ li[i]) % 2
            if not np.array_equal(lhs, rhs.astype(np.uint8)):
                return ModuleCheck(False, "left-module", (i, j))
    if right is not None:
        ri = right.astype(np.int64)
        for i in range(d):
            for j in range(d):
                # x.(m.y) = (x.m).y + m.[x,y]
                lhs = (li[i] @ ri[j]) % 2
                rhs = (ri[j] @ li[i] + _act(right, t.c[i, j]).astype(np.int64)) % 2
                if not np.array_equal(lhs, rhs):
                    return ModuleCheck(False, "left-middle", (i, j))
                # m.[x,y] = (m.x).y + x.(m.y)
                lhs = _act(right, t.c[i, j]).astype(np.int64)
                rhs = (ri[j] @ ri[i] + li[i] @ ri[j]) % 2
                if not np.array_equal(lhs, rhs):
                    return ModuleCheck(False, "middle-right", (i, j))
    return ModuleCheck(True)


def _validated(t: BracketTable, mod):
    check = check_module_axioms(t, mod)
    if not check.ok:
        raise ModuleAxiomError(check.axiom, check.pair)
    return mod


def trivial_module(t: BracketTable, m: int = 1) -> ModuleSpec:
    return ModuleSpec(m, np.zeros((t.dim, m, m), dtype=np.uint8))


def flambda_module(t: BracketTable, lam) -> ModuleSpec:
    """One-dimensional module where b_i acts by the scalar lam[i]."""
    lam = np.asarray(lam, dtype=np.uint8).reshape(t.dim) & 1
    rho = lam.reshape(t.dim, 1, 1).copy()
    return _validated(t, ModuleSpec(1, rho))


def coadjoint_module(t: BracketTable) -> ModuleSpec:
    """Dual-space action (x . phi)(y) = phi([x, y]); needs Jacobi."""
    if not classify_algebra(t).jacobi:
        raise GF2Error("coadjoint module needs the Jacobi identity")
    rho = np.array([t.c[i] for i in range(t.dim)], dtype=np.uint8)
    return _validated(t, ModuleSpec(t.dim, rho))


def adjoint_module(t: BracketTable) -> ModuleSpec:
    """The algebra acting on itself by x . y = [x, y]."""
    rho = np.array([t.c[i].T for i in range(t.dim)], dtype=np.uint8)
    return _validated(t, ModuleSpec(t.dim, rho))


def symmetrize(mod: ModuleSpec, t: BracketTable) -> BimoduleSpec:
    """Read a left module as a symmetric bimodule (right action = left)."""
    bim = BimoduleSpec(mod.dim, mod.rho, mod.rho)
    return _validated(t, bim)


def make_module(t: BracketTable, spec: str):
    """Build a module from a CLI-style spec string.

    Accepted forms: "trivial", "trivial:K", "flambda:BITS", "adjoint",
    "coadjoint".  The latter two are returned symmetrized.
    """
    if spec == "trivial":
        return symmetrize(trivial_module(t, 1), t)
    if spec.startswith("trivial:"):
        return symmetrize(trivial_module(t, int(spec.split(":", 1)[1])), t)
    if spec.startswith("flambda:"):
        bits = spec.split(":", 1)[1]
        if len(bits) != t.dim or any(ch not in "01" for ch in bits):
            raise GF2Error(f"flambda wants {t.dim} bits, got {bits!r}")
        lam = np.array([int(ch) for ch in bits], dtype=np.uint8)
        return symmetrize(flambda_module(t, lam), t)
    if spec == "adjoint":
        return symmetrize(adjoint_module(t), t)
    if spec == "coadjoint":
        return symmetrize(coadjoint_module(t), t)
    raise GF2Error(f"unknown module spec {spec!r}")


def as_coefficients(t: BracketTable, mod) -> BimoduleSpec:
    """Coerce a module to the symmetric-bimodule form the complexes use."""
    if isinstance(mod, BimoduleSpec):
        return mod
    if isinstance(mod, ModuleSpec):
        return symmetrize(mod, t)
    raise GF2Error("expected ModuleSpec or BimoduleSpec")


def leibniz_kernel(t: BracketTable) -> Subspace:
    """Span of all squares [x, x], taken over every field extension.

    Generated by the diagonal brackets together with the symmetrized
    off-diagonal ones (the cross terms of the square expansion).
    """
    rows = []
    for i in range(t.dim):
        rows.append(t.c[i, i])
        for j in range(i + 1, t.dim):
            rows.append(t.c[i, j] ^ t.c[j, i])
    return Subspace.from_rows(t.dim, np.array(rows, dtype=np.uint8))


def derived_span(t: BracketTable) -> Subspace:
    """Span of all brackets [b_i, b_j]."""
    rows = t.c.reshape(t.dim * t.dim, t.dim)
    return Subspace.from_rows(t.dim, rows)


class IdealVerdict(Enum):
    NOT_SUBALGEBRA = "not-subalgebra"
    SUBALGEBRA = "subalgebra"
    IDEAL = "ideal"


def is_ideal(t: BracketTable, h: Subspace) -> IdealVerdict:
    if h.ambient_dim != t.dim:
        raise GF2Error("subspace ambient dimension does not match algebra")
    hb = h.basis.to_dense()
    for u in hb:
        for v in hb:
            if not h.contains_vector(t.bracket(u, v)):
                return IdealVerdict.NOT_SUBALGEBRA
    eye = np.eye(t.dim, dtype=np.uint8)
    for u in hb:
        for e in eye:
            if not h.contains_vector(t.bracket(e, u)):
                return IdealVerdict.SUBALGEBRA
            if not h.contains_vector(t.bracket(u, e)):
                return IdealVerdict.SUBALGEBRA
    return IdealVerdict.IDEAL


@dataclass(frozen=True)
class SubalgebraSplit:
    """Adapted-basis data for a subalgebra (or ideal) h of an algebra."""

    table: BracketTable
    h: Subspace
    verdict: IdealVerdict
    adapted: BitMatrix  # rows: h basis first, then echelon-complement vectors
    h_dim: int
    q_dim: int
    h_table: BracketTable  # bracket of h in its own basis coordinates
    proj: BitMatrix  # ambient -> quotient coordinates
    section: BitMatrix  # quotient coordinates -> ambient (proj @ section = id)
    q_table: BracketTable | None  # quotient algebra; ideals only
    h_action_on_q: ModuleSpec  # adjoint action of h on the complement


def quotient_algebra(
    t: BracketTable, h: Subspace, require_ideal: bool = True
) -> SubalgebraSplit:
    """Split the algebra along a subalgebra with a deterministic complement.

    The complement is spanned by the standard basis vectors away from the
    echelon pivots of h, so reports are reproducible.  For ideals the
    quotient bracket table is returned as well; for mere subalgebras only
    the adapted basis and the h-module structure on the complement.
    """
    verdict = is_ideal(t, h)
    if verdict is IdealVerdict.NOT_SUBALGEBRA:
        raise GF2Error("not a subalgebra")
    if require_ideal and verdict is not IdealVerdict.IDEAL:
        raise GF2Error("not an ideal")
    d = t.dim
    h_dim = h.dim
    q_dim = d - h_dim
    pivot_set = set(h.pivots)
    free = [k for k in range(d) if k not in pivot_set]
    adapted_dense = np.zeros((d, d), dtype=np.uint8)
    adapted_dense[:h_dim] = h.basis.to_dense()
    for r, k in enumerate(free):
        adapted_dense[h_dim + r, k] = 1
    adapted = BitMatrix.from_dense(adapted_dense)

    proj_dense = np.zeros((q_dim, d), dtype=np.uint8)
    eye = np.eye(d, dtype=np.uint8)
    for j in range(d):
        red = h.reduce_rows(BitMatrix.from_dense(eye[j].reshape(1, -1))).to_dense()[0]
        proj_dense[:, j] = red[free]
    proj = BitMatrix.from_dense(proj_dense)
    section = BitMatrix.from_dense(adapted_dense[h_dim:].T)

    hb = h.basis.to_dense()
    c_h = np.zeros((h_dim, h_dim, h_dim), dtype=np.uint8)
    for a in range(h_dim):
        for b in range(h_dim):
            w = t.bracket(hb[a], hb[b])
            if not h.contains_vector(w):
                raise GF2Error("subalgebra closure violated")
            c_h[a, b] = w[list(h.pivots)]
    h_table = BracketTable(c_h)

    sect_dense = adapted_dense[h_dim:]
    q_table = None
    if verdict is IdealVerdict.IDEAL and q_dim:
        c_q = np.zeros((q_dim, q_dim, q_dim), dtype=np.uint8)
        for a in range(q_dim):
            for b in range(q_dim):
                w = t.bracket(sect_dense[a], sect_dense[b])
                c_q[a, b] = proj.mul_vector(w)
        q_table = BracketTable(c_q)
    elif verdict is IdealVerdict.IDEAL:
        q_table = BracketTable.zero(0)

    act = np.zeros((h_dim, q_dim, q_dim), dtype=np.uint8)
    for a in range(h_dim):
        for k in range(q_dim):
            act[a][:, k] = proj.mul_vector(t.bracket(hb[a], sect_dense[k]))
    h_action_on_q = ModuleSpec(q_dim, act)

    return SubalgebraSplit(
        table=t,
        h=h,
        verdict=verdict,
        adapted=adapted,
        h_dim=h_dim,
        q_dim=q_dim,
        h_table=h_table,
        proj=proj,
        section=section,
        q_table=q_table,
        h_action_on_q=h_action_on_q,
    )


def rows_in_basis(basis: BitMatrix, rows: BitMatrix) -> BitMatrix:
    """Coefficients of row vectors in a (row-)basis: coeff @ basis = rows."""
    x = solve(basis.transpose(), rows.transpose())
    if x is None:
        raise GF2Error("rows are not in the span of the basis")
    return x.transpose()


def change_basis(t: BracketTable, p: BitMatrix) -> BracketTable:
    """Bracket table in the basis whose vectors are the rows of p."""
    d = t.dim
    if p.shape != (d, d):
        raise GF2Error("basis matrix must be d x d")
    pinv = inverse(p.transpose()).transpose()  # coords = x @ pinv
    pd = p.to_dense().astype(np.int64)
    c = t.c.astype(np.int64)
    raw = np.einsum("ai,bj,ijk->abk", pd, pd, c) & 1
    pid = pinv.to_dense().astype(np.int64)
    new_c = np.einsum("abk,kl->abl", raw, pid) & 1
    return BracketTable(new_c.astype(np.uint8))


def module_change_basis(mod, p: BitMatrix):
    """Actions of the new basis vectors (rows of p); value space unchanged."""
    pd = p.to_dense()
    if isinstance(mod, BimoduleSpec):
        left = np.array([_act(mod.left, row) for row in pd], dtype=np.uint8)
        right = np.array([_act(mod.right, row) for row in pd], dtype=np.uint8)
        return BimoduleSpec(mod.dim, left, right)
    rho = np.array([_act(mod.rho, row) for row in pd], dtype=np.uint8)
    return ModuleSpec(mod.dim, rho)
