"""Cochain spaces and differentials for the three complex flavors.

Cochains are coordinate vectors over (monomial basis x coefficient
basis), monomial-major with colexicographic monomial ranking, so every
matrix layout is deterministic.

Flavors:
  SYM    -- functionals on symmetric powers; monomials are non-decreasing
            index tuples.  Needs a commutative Jacobi table.
  EXT    -- functionals on exterior powers; strictly increasing tuples.
            Needs an alternating Jacobi table, i.e. a Lie algebra.
  TENSOR -- functionals on full tensor powers; all tuples.  Needs a left
            Leibniz table.

The SYM and EXT differentials follow the classical formula with the
bracket inserted as first argument.  The TENSOR differential inserts
[x_i, x_j] in the slot of x_j; restricted to symmetric cochains the two
conventions agree, which is what makes the symmetric complex a
subcomplex of the tensor one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb

import numpy as np

from .algebra import (
    BimoduleSpec,
    BracketTable,
    as_coefficients,
    check_module_axioms,
    classify_algebra,
)
from .gf2 import BitMatrix

__all__ = [
    "Flavor",
    "InclusionPair",
    "basis_tuples",
    "basis_dim",
    "monomial_rank",
    "PreconditionError",
    "differential_matrix",
    "insertion_matrix",
    "lie_derivative_matrix",
    "derivation_operator_matrix",
    "inclusion_matrix",
    "ComplexTower",
    "build_tower",
]


class Flavor(Enum):
    SYM = "sym"
    EXT = "ext"
    TENSOR = "tensor"


class InclusionPair(Enum):
    """The three subcomplex inclusions between the flavors."""

    EXT_IN_TENSOR = "ext-in-tensor"  # alternating cochains inside tensor ones
    EXT_IN_SYM = "ext-in-sym"  # alternating cochains inside symmetric ones
    SYM_IN_TENSOR = "sym-in-tensor"  # symmetric cochains inside tensor ones


class PreconditionError(ValueError):
    """An algebra or module fails the axioms a flavor requires."""


@lru_cache(maxsize=None)
def basis_tuples(flavor: Flavor, d: int, n: int):
    if n == 0:
        return ((),)
    if flavor is Flavor.SYM:
        tuples = combinations_with_replacement(range(d), n)
    elif flavor is Flavor.EXT:
        tuples = combinations(range(d), n)
    else:
        tuples = product(range(d), repeat=n)
    return tuple(sorted(tuples, key=lambda t: t[::-1]))


def basis_dim(flavor: Flavor, d: int, n: int) -> int:
    if flavor is Flavor.SYM:
        return comb(d + n - 1, n) if d else int(n == 0)
    if flavor is Flavor.EXT:
        return comb(d, n)
    return d**n


@lru_cache(maxsize=None)
def monomial_rank(flavor: Flavor, d: int, n: int):
    return {t: i for i, t in enumerate(basis_tuples(flavor, d, n))}


def canonical(flavor: Flavor, word):
    """Canonical monomial of a word, or None when the Ext class is zero."""
    if flavor is Flavor.TENSOR:
        return tuple(word)
    srt = tuple(sorted(word))
    if flavor is Flavor.EXT:
        for a, b in zip(srt, srt[1:]):
            if a == b:
                return None
    return srt


def _require_flavor(flavor: Flavor, table: BracketTable, coeffs: BimoduleSpec):
    cls = classify_algebra(table)
    if flavor is Flavor.SYM and not (cls.commutative and cls.jacobi):
        missing = "commutative" if not cls.commutative else "jacobi"
        raise PreconditionError(f"sym flavor needs a commutative Jacobi table ({missing} fails)")
    if flavor is Flavor.EXT and not (cls.alternating and cls.jacobi):
        missing = "alternating" if not cls.alternating else "jacobi"
        raise PreconditionError(f"ext flavor needs a Lie table ({missing} fails)")
    if flavor is Flavor.TENSOR and not cls.left_leibniz:
        raise PreconditionError("tensor flavor needs a left Leibniz table")
    if not coeffs.is_symmetric:
        raise PreconditionError("coefficients must be a symmetric bimodule")
    check = check_module_axioms(table, coeffs)
    if not check.ok:
        raise PreconditionError(f"coefficients fail axiom {check.axiom} at {check.pair}")


def _differential_dense(flavor, table, coeffs, n, rep_of=None):
    d, m = table.dim, coeffs.dim
    src = basis_tuples(flavor, d, n)
    dst = basis_tuples(flavor, d, n + 1)
    srank = monomial_rank(flavor, d, n)
    rho = coeffs.left
    eye = np.eye(m, dtype=np.uint8)
    out = np.zeros((len(dst) * m, len(src) * m), dtype=np.uint8)
    for r, mono in enumerate(dst):
        word = mono if rep_of is None else rep_of(mono)
        r0 = r * m
        for i in range(n + 1):
            sub = canonical(flavor, word[:i] + word[i + 1 :])
            if sub is None:
                continue
            c0 = srank[sub] * m
            out[r0 : r0 + m, c0 : c0 + m] ^= rho[word[i]]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                vec = table.c[word[i], word[j]]
                ks = np.nonzero(vec)[0]
                if not ks.size:
                    continue
                if flavor is Flavor.TENSOR:
                    base = word[:i] + word[i + 1 :]
                    for k in ks:
                        arg = base[: j - 1] + (int(k),) + base[j:]
                        c0 = srank[arg] * m
                        out[r0 : r0 + m, c0 : c0 + m] ^= eye
                else:
                    rest = word[:i] + word[i + 1 : j] + word[j + 1 :]
                    for k in ks:
                        arg = canonical(flavor, (int(k),) + rest)
                        if arg is None:
                            continue
                        c0 = srank[arg] * m
                        out[r0 : r0 + m, c0 : c0 + m] ^= eye
    return out


def differential_matrix(
    flavor: Flavor, table: BracketTable, coeffs, n: int, _rep_of=None
) -> BitMatrix:
    """Matrix of the degree-n coboundary, cochain degree n to n+1."""
    coeffs = as_coefficients(table, coeffs)
    _require_flavor(flavor, table, coeffs)
    return BitMatrix.from_dense(_differential_dense(flavor, table, coeffs, n, _rep_of))


def insertion_matrix(flavor: Flavor, d: int, mdim: int, x, n: int) -> BitMatrix:
    """Insertion operator (i_x f)(args) = f(x, args): degree n to n-1."""
    x = np.asarray(x, dtype=np.uint8) & 1
    if n == 0:
        return BitMatrix.zeros(0, basis_dim(flavor, d, 0) * mdim)
    src = basis_tuples(flavor, d, n)
    dst = basis_tuples(flavor, d, n - 1)
    srank = monomial_rank(flavor, d, n)
    eye = np.eye(mdim, dtype=np.uint8)
    out = np.zeros((len(dst) * mdim, len(src) * mdim), dtype=np.uint8)
    for r, mono in enumerate(dst):
        r0 = r * mdim
        for u in np.nonzero(x)[0]:
            arg = canonical(flavor, (int(u),) + mono)
            if arg is None:
                continue
            c0 = srank[arg] * mdim
            out[r0 : r0 + mdim, c0 : c0 + mdim] ^= eye
    return BitMatrix.from_dense(out)


def derivation_operator_matrix(
    flavor: Flavor, d: int, mdim: int, value_action, slot_action, n: int
) -> BitMatrix:
    """Operator f -> A f(.) + sum_i f(..., B x_i, ...) on degree-n cochains.

    value_action A acts on the coefficient space, slot_action B on the
    argument space; the Lie derivative and the induced actions of outer
    elements on a subalgebra complex are both instances.
    """
    a = np.asarray(value_action, dtype=np.uint8) & 1
    b = np.asarray(slot_action, dtype=np.uint8) & 1
    monos = basis_tuples(flavor, d, n)
    rank = monomial_rank(flavor, d, n)
    eye = np.eye(mdim, dtype=np.uint8)
    out = np.zeros((len(monos) * mdim, len(monos) * mdim), dtype=np.uint8)
    for r, mono in enumerate(monos):
        r0 = r * mdim
        out[r0 : r0 + mdim, r0 : r0 + mdim] ^= a
        for i in range(n):
            for k in np.nonzero(b[:, mono[i]])[0]:
                arg = canonical(flavor, mono[:i] + (int(k),) + mono[i + 1 :])
                if arg is None:
                    continue
                c0 = rank[arg] * mdim
                out[r0 : r0 + mdim, c0 : c0 + mdim] ^= eye
    return BitMatrix.from_dense(out)


def lie_derivative_matrix(
    flavor: Flavor, table: BracketTable, coeffs, x, n: int
) -> BitMatrix:
    """Lie derivative L_x on degree-n cochains."""
    coeffs = as_coefficients(table, coeffs)
    _require_flavor(flavor, table, coeffs)
    x = np.asarray(x, dtype=np.uint8) & 1
    a = coeffs.action(x)
    # column j of the slot action is [x, b_j]
    b = (
        np.einsum("u,ujk->jk", x.astype(np.int64), table.c.astype(np.int64)) & 1
    ).T.astype(np.uint8)
    return derivation_operator_matrix(flavor, table.dim, coeffs.dim, a, b, n)


def inclusion_matrix(pair: InclusionPair, d: int, mdim: int, n: int) -> BitMatrix:
    """Pullback matrix of the quotient map of argument spaces.

    Maps sub-flavor cochain coordinates into the bigger flavor's:
    a functional on the quotient argument space becomes the functional
    w -> f(class of w).  Each matrix is injective.
    """
    if pair is InclusionPair.EXT_IN_TENSOR:
        big, small = Flavor.TENSOR, Flavor.EXT
        squash = lambda w: canonical(Flavor.EXT, w)
    elif pair is InclusionPair.EXT_IN_SYM:
        big, small = Flavor.SYM, Flavor.EXT
        squash = lambda w: canonical(Flavor.EXT, w)
    else:
        big, small = Flavor.TENSOR, Flavor.SYM
        squash = lambda w: canonical(Flavor.SYM, w)
    rows = basis_tuples(big, d, n)
    srank = monomial_rank(small, d, n)
    eye = np.eye(mdim, dtype=np.uint8)
    out = np.zeros((len(rows) * mdim, len(srank) * mdim), dtype=np.uint8)
    for r, w in enumerate(rows):
        cls = squash(w)
        if cls is None:
            continue
        c0 = srank[cls] * mdim
        out[r * mdim : (r + 1) * mdim, c0 : c0 + mdim] ^= eye
    return BitMatrix.from_dense(out)


@dataclass(frozen=True)
class ComplexTower:
    """A truncated cochain complex: per-degree dims and differentials.

    diffs[n] maps degree n to degree n+1; the top degree has no outgoing
    differential, so cohomology there is never reported.
    """

    dims: tuple
    diffs: tuple  # length len(dims) - 1
    flavor: Flavor | None
    label: str = ""
    table: BracketTable | None = None
    coeffs: BimoduleSpec | None = None

    @property
    def n_max(self) -> int:
        return len(self.dims) - 1

    def differential(self, n: int) -> BitMatrix:
        return self.diffs[n]

    def check_composition(self) -> bool:
        for n in range(len(self.diffs) - 1):
            if not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                return False
        return True


def build_tower(
    flavor: Flavor, table: BracketTable, coeffs, n_max: int, label: str = ""
) -> ComplexTower:
    """Cochain complex of (table, coeffs) through degree n_max."""
    coeffs = as_coefficients(table, coeffs)
    _require_flavor(flavor, table, coeffs)
    dims = tuple(basis_dim(flavor, table.dim, n) * coeffs.dim for n in range(n_max + 1))
    diffs = tuple(
        BitMatrix.from_dense(_differential_dense(flavor, table, coeffs, n))
        for n in range(n_max)
    )
    return ComplexTower(dims, diffs, flavor, label, table, coeffs)
