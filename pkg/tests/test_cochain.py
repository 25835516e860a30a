"""Tests for cochain bases, differentials, operators, and inclusions."""

import numpy as np
import pytest

from commcoh.algebra import BracketTable, flambda_module, symmetrize, trivial_module
from commcoh.cochain import (
    Flavor,
    InclusionPair,
    PreconditionError,
    basis_dim,
    basis_tuples,
    build_tower,
    differential_matrix,
    inclusion_matrix,
    insertion_matrix,
    lie_derivative_matrix,
    monomial_rank,
)
from commcoh.gf2 import BitMatrix

from conftest import catalog, random_comm_lie_table, random_valid_module


class TestBases:
    def test_counts(self):
        assert basis_dim(Flavor.SYM, 2, 4) == 5
        assert basis_dim(Flavor.EXT, 3, 2) == 3
        assert basis_dim(Flavor.TENSOR, 2, 3) == 8

    def test_tuple_shapes(self):
        assert basis_tuples(Flavor.SYM, 2, 2) == ((0, 0), (0, 1), (1, 1))
        assert all(
            len(basis_tuples(f, d, n)) == basis_dim(f, d, n)
            for f in Flavor
            for d in (1, 2, 3)
            for n in range(5)
        )

    def test_colex_order_tensor(self):
        assert basis_tuples(Flavor.TENSOR, 2, 2) == ((0, 0), (1, 0), (0, 1), (1, 1))


class TestDifferential:
    def test_nilpotent_degree_one(self):
        # only [f,f] = e contributes: d(e*) is the functional dual to f.f
        n = catalog("N")
        d1 = differential_matrix(Flavor.SYM, n.table, n.modules["trivial"], 1)
        assert d1.shape == (3, 2)
        dense = d1.to_dense()
        assert dense.sum() == 1
        row = monomial_rank(Flavor.SYM, 2, 2)[(1, 1)]
        assert dense[row, 0] == 1  # column of e*, row of the f.f monomial

    def test_abelian_zero(self):
        t = BracketTable.zero(2)
        triv = symmetrize(trivial_module(t), t)
        for flavor in Flavor:
            for n in range(4):
                assert differential_matrix(flavor, t, triv, n).is_zero()

    def test_one_dim_nontrivial_module_alternates(self):
        t = BracketTable.zero(1)
        mod = flambda_module(t, [1])
        for n in range(6):
            d = differential_matrix(Flavor.SYM, t, mod, n)
            if n % 2 == 0:
                assert d == BitMatrix.identity(1)
            else:
                assert d.is_zero()

    def test_composition_zero_catalog(self):
        for name in ("N", "a", "abelian2", "heis3"):
            entry = catalog(name)
            is_lie = name != "N"
            for flavor in Flavor:
                if flavor is Flavor.EXT and not is_lie:
                    continue
                tower = build_tower(flavor, entry.table, entry.modules["trivial"], 5)
                assert tower.check_composition(), (name, flavor)

    def test_composition_zero_random(self):
        rng = np.random.default_rng(10)
        for _ in range(25):
            d = int(rng.integers(1, 4))
            t = random_comm_lie_table(rng, d)
            mod = random_valid_module(rng, t)
            tower = build_tower(Flavor.SYM, t, mod, 4)
            assert tower.check_composition()
            tower = build_tower(Flavor.TENSOR, t, mod, 4)
            assert tower.check_composition()

    def test_precondition_errors_name_axiom(self):
        n = catalog("N")
        with pytest.raises(PreconditionError, match="alternating"):
            differential_matrix(Flavor.EXT, n.table, n.modules["trivial"], 1)
        t = BracketTable.from_entries(2, {(0, 1): [1]})  # not commutative
        with pytest.raises(PreconditionError, match="commutative"):
            differential_matrix(Flavor.SYM, t, symmetrize(trivial_module(t), t), 1)

    def test_representative_independence(self):
        # evaluating on a shuffled representative word gives the same matrix
        rng = np.random.default_rng(11)
        for name in ("N", "a", "heis3"):
            entry = catalog(name)
            for n in range(4):
                def shuffled(mono):
                    word = list(mono)
                    rng.shuffle(word)
                    return tuple(word)

                base = differential_matrix(
                    Flavor.SYM, entry.table, entry.modules["trivial"], n
                )
                alt = differential_matrix(
                    Flavor.SYM, entry.table, entry.modules["trivial"], n, _rep_of=shuffled
                )
                assert base == alt


class TestOperators:
    def test_zero_element(self):
        a = catalog("a")
        for n in range(4):
            assert insertion_matrix(Flavor.SYM, 2, 1, [0, 0], n).is_zero()
            assert lie_derivative_matrix(
                Flavor.SYM, a.table, a.modules["trivial"], [0, 0], n
            ).is_zero()

    def test_abelian_trivial_derivative_zero(self):
        t = BracketTable.zero(3)
        triv = symmetrize(trivial_module(t), t)
        for n in range(4):
            assert lie_derivative_matrix(Flavor.SYM, t, triv, [1, 1, 0], n).is_zero()

    def test_nilpotent_derivative_entry(self):
        # (L_f e*)(f) = e*([f,f]) = 1
        n = catalog("N")
        lf = lie_derivative_matrix(Flavor.SYM, n.table, n.modules["trivial"], [0, 1], 1)
        assert lf.get(1, 0) == 1  # row f-monomial, column e*

    def test_insertion_degree_zero(self):
        m = insertion_matrix(Flavor.SYM, 2, 1, [1, 0], 0)
        assert m.shape == (0, 1)

    def test_cartan_relation(self):
        eye = np.eye(3, dtype=np.uint8)
        for name in ("N", "a", "abelian2", "heis3"):
            entry = catalog(name)
            d = entry.table.dim
            mod = entry.modules["trivial"]
            tower = build_tower(Flavor.SYM, entry.table, mod, 5)
            for xi in range(d):
                x = np.eye(d, dtype=np.uint8)[xi]
                for n in range(5):
                    lx = lie_derivative_matrix(Flavor.SYM, entry.table, mod, x, n)
                    i_n = insertion_matrix(Flavor.SYM, d, mod.dim, x, n)
                    i_n1 = insertion_matrix(Flavor.SYM, d, mod.dim, x, n + 1)
                    rhs = i_n1 @ tower.differential(n)
                    if n > 0:
                        rhs = rhs + (tower.differential(n - 1) @ i_n)
                    assert lx == rhs, (name, xi, n)

    def test_derivative_kills_cohomology(self):
        # L_x maps cocycles into coboundaries
        from commcoh.cohomology import boundaries, cycles

        for name in ("N", "a"):
            entry = catalog(name)
            mod = entry.modules["trivial"]
            tower = build_tower(Flavor.SYM, entry.table, mod, 5)
            for xi in range(2):
                x = np.eye(2, dtype=np.uint8)[xi]
                for n in range(4):
                    lx = lie_derivative_matrix(Flavor.SYM, entry.table, mod, x, n)
                    z = cycles(tower, n)
                    b = boundaries(tower, n)
                    if z.dim:
                        img = z.basis @ lx.transpose()
                        assert b.reduce_rows(img).is_zero()


class TestInclusions:
    def test_low_degrees_identity(self):
        for pair in InclusionPair:
            for n in (0, 1):
                m = inclusion_matrix(pair, 2, 1, n)
                assert m == BitMatrix.identity(m.rows)

    def test_sym_into_tensor_content(self):
        m = inclusion_matrix(InclusionPair.SYM_IN_TENSOR, 2, 1, 2)
        assert m.shape == (4, 3)
        words = basis_tuples(Flavor.TENSOR, 2, 2)
        monos = basis_tuples(Flavor.SYM, 2, 2)
        col = monos.index((0, 1))
        rows = {w for i, w in enumerate(words) if m.get(i, col)}
        assert rows == {(0, 1), (1, 0)}

    def test_composition_identity(self):
        # including alternating cochains through the symmetric ones equals
        # the direct inclusion into tensor cochains
        for d in (1, 2, 3):
            for mdim in (1, 2):
                for n in range(5):
                    i1 = inclusion_matrix(InclusionPair.EXT_IN_TENSOR, d, mdim, n)
                    i2 = inclusion_matrix(InclusionPair.EXT_IN_SYM, d, mdim, n)
                    i3 = inclusion_matrix(InclusionPair.SYM_IN_TENSOR, d, mdim, n)
                    assert i3 @ i2 == i1

    def test_injective(self):
        for pair in InclusionPair:
            for n in range(4):
                m = inclusion_matrix(pair, 3, 2, n)
                assert m.rref()[1] == m.cols

    def test_chain_map_property(self):
        for name in ("a", "abelian2", "heis3"):
            entry = catalog(name)
            d = entry.table.dim
            mod = entry.modules["trivial"]
            towers = {f: build_tower(f, entry.table, mod, 5) for f in Flavor}
            pairs = {
                InclusionPair.EXT_IN_TENSOR: (Flavor.EXT, Flavor.TENSOR),
                InclusionPair.EXT_IN_SYM: (Flavor.EXT, Flavor.SYM),
                InclusionPair.SYM_IN_TENSOR: (Flavor.SYM, Flavor.TENSOR),
            }
            for pair, (sub, tot) in pairs.items():
                for n in range(4):
                    inc_n = inclusion_matrix(pair, d, mod.dim, n)
                    inc_n1 = inclusion_matrix(pair, d, mod.dim, n + 1)
                    lhs = towers[tot].differential(n) @ inc_n
                    rhs = inc_n1 @ towers[sub].differential(n)
                    assert lhs == rhs, (name, pair, n)

    def test_chain_map_sym_in_tensor_non_lie(self):
        n = catalog("N")
        mod = n.modules["trivial"]
        sym = build_tower(Flavor.SYM, n.table, mod, 5)
        ten = build_tower(Flavor.TENSOR, n.table, mod, 5)
        for deg in range(4):
            inc_n = inclusion_matrix(InclusionPair.SYM_IN_TENSOR, 2, 1, deg)
            inc_n1 = inclusion_matrix(InclusionPair.SYM_IN_TENSOR, 2, 1, deg + 1)
            assert ten.differential(deg) @ inc_n == inc_n1 @ sym.differential(deg)


class TestTower:
    def test_degree_zero_is_module(self):
        entry = catalog("heis3")
        tower = build_tower(Flavor.SYM, entry.table, entry.modules["adjoint"], 3)
        assert tower.dims[0] == 3

    def test_label_and_bounds(self):
        entry = catalog("N")
        tower = build_tower(Flavor.SYM, entry.table, entry.modules["trivial"], 4, "x")
        assert tower.label == "x" and tower.n_max == 4 and len(tower.diffs) == 4
