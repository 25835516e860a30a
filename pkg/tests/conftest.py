"""Shared helpers: catalog access, random valid inputs, independent oracles.

The oracles deliberately avoid the package's matrix machinery: ranks are
computed by Gaussian elimination on int bitmasks, differentials by
evaluating the coboundary formula on dictionaries of tuples.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from commcoh.algebra import (
    BimoduleSpec,
    BracketTable,
    ModuleSpec,
    coadjoint_module,
    derived_span,
    flambda_module,
    symmetrize,
    trivial_module,
)
from commcoh.catalog import load_catalog, survey_enumerate
from commcoh.gf2 import BitMatrix, Subspace, annihilator, inverse


@lru_cache(maxsize=None)
def catalog(name):
    return load_catalog(name)


@lru_cache(maxsize=None)
def survey(d, up_to_iso=False):
    return survey_enumerate(d, up_to_iso=up_to_iso)


def random_invertible(rng, n):
    while True:
        m = BitMatrix.from_dense(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
        if m.rref()[1] == n:
            return m


def random_comm_lie_table(rng, d) -> BracketTable:
    """Uniform choice from the enumerated valid tables of that dimension."""
    pool = survey(d).tables
    return BracketTable(pool[rng.integers(0, len(pool))])


def random_valid_module(rng, table: BracketTable, max_dim=2) -> BimoduleSpec:
    """A random symmetric coefficient module known to satisfy the axioms."""
    d = table.dim
    choices = ["trivial1", "trivial2", "flambda"]
    if d <= max_dim:
        choices.append("coadjoint")
    kind = choices[rng.integers(0, len(choices))]
    if kind == "trivial1":
        mod = trivial_module(table, 1)
    elif kind == "trivial2":
        mod = trivial_module(table, 2)
    elif kind == "coadjoint":
        mod = coadjoint_module(table)
    else:
        ann = annihilator(derived_span(table))
        if ann.dim == 0:
            mod = trivial_module(table, 1)
        else:
            coeffs = rng.integers(0, 2, size=ann.dim, dtype=np.uint8)
            lam = (coeffs.astype(np.int64) @ ann.basis.to_dense().astype(np.int64)) % 2
            mod = flambda_module(table, lam.astype(np.uint8))
    if mod.dim > 1 and rng.integers(0, 2):
        s = random_invertible(rng, mod.dim)
        sd = s.to_dense().astype(np.int64)
        si = inverse(s).to_dense().astype(np.int64)
        rho = np.array(
            [(sd @ r.astype(np.int64) @ si) % 2 for r in mod.rho], dtype=np.uint8
        )
        mod = ModuleSpec(mod.dim, rho)
    return symmetrize(mod, table)


def random_subalgebra(rng, table: BracketTable) -> Subspace:
    """Bracket-closure of a random vector (possibly the whole algebra)."""
    d = table.dim
    v = rng.integers(0, 2, size=d, dtype=np.uint8)
    if not v.any():
        v[rng.integers(0, d)] = 1
    span = Subspace.from_rows(d, v.reshape(1, -1))
    while True:
        rows = [span.basis.to_dense()]
        grew = False
        dense = span.basis.to_dense()
        for x in dense:
            for y in dense:
                w = table.bracket(x, y)
                if not span.contains_vector(w):
                    rows.append(w.reshape(1, -1))
                    grew = True
        if not grew:
            return span
        span = Subspace.from_rows(d, np.concatenate(rows, axis=0))


# -- independent oracles ------------------------------------------------


def oracle_rank(rows) -> int:
    """Gaussian elimination over GF(2) on int bitmasks."""
    pivots = {}
    for r in rows:
        while r:
            b = r.bit_length() - 1
            if b in pivots:
                r ^= pivots[b]
            else:
                pivots[b] = r
                break
    return len(pivots)


def oracle_sym_differential(c, rho, mdim, n):
    """Coboundary on symmetric n-cochains as int-bitmask rows.

    Row (monomial w of degree n+1, value row r): bitmask over columns
    (degree-n monomial, value column).  Independent of the package.
    """
    d = len(c)
    monos_n = list(combinations_with_replacement(range(d), n))
    monos_n1 = list(combinations_with_replacement(range(d), n + 1))
    col = {w: i for i, w in enumerate(monos_n)}
    rows = []
    for w in monos_n1:
        block = [0] * mdim
        for i in range(n + 1):
            sub = tuple(sorted(w[:i] + w[i + 1 :]))
            a = rho[w[i]]
            for r_out in range(mdim):
                for c_in in range(mdim):
                    if a[r_out][c_in]:
                        block[r_out] ^= 1 << (col[sub] * mdim + c_in)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                vec = c[w[i]][w[j]]
                rest = w[:i] + w[i + 1 : j] + w[j + 1 :]
                for k in range(d):
                    if vec[k]:
                        arg = tuple(sorted((k,) + rest))
                        for r_out in range(mdim):
                            block[r_out] ^= 1 << (col[arg] * mdim + r_out)
        rows.extend(block)
    return rows, len(monos_n) * mdim


def oracle_sym_betti(table: BracketTable, mod, n_max):
    """Betti numbers of the symmetric complex via the bitmask oracle."""
    c = table.c.tolist()
    if isinstance(mod, BimoduleSpec):
        rho = mod.left.tolist()
        mdim = mod.dim
    else:
        rho = mod.rho.tolist()
        mdim = mod.dim
    dims = []
    prev_rank = 0
    from math import comb

    for n in range(n_max):
        rows, ncols = oracle_sym_differential(c, rho, mdim, n)
        rank = oracle_rank(rows)
        space = comb(table.dim + n - 1, n) * mdim
        dims.append(space - rank - prev_rank)
        prev_rank = rank
    return dims


def subspace_vectors(s: Subspace):
    """All vectors of a (small) subspace, for exhaustive-enumeration oracles."""
    dense = s.basis.to_dense()
    out = []
    for code in range(1 << s.dim):
        v = np.zeros(s.ambient_dim, dtype=np.uint8)
        for i in range(s.dim):
            if (code >> i) & 1:
                v ^= dense[i]
        out.append(tuple(int(x) for x in v))
    return set(out)
