"""Tests for the packed GF(2) linear algebra layer."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commcoh.gf2 import (
    BitMatrix,
    GF2Error,
    QuotientCoords,
    Subspace,
    annihilator,
    apply_to_subspace,
    induced_map,
    inverse,
    kernel_basis,
    preimage,
    quotient_dim,
    rref_rank,
    solve,
    subspace_combine,
    subspace_intersect,
    subspace_sum,
)

from conftest import subspace_vectors


def dense_matrices(max_rows=6, max_cols=8):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(lambda rows: np.array(rows, dtype=np.uint8).reshape(r, c))
        )
    )


class TestRref:
    def test_identity(self):
        _, rank, pivots = rref_rank(BitMatrix.identity(3))
        assert rank == 3 and pivots == (0, 1, 2)

    def test_zero(self):
        _, rank, pivots = rref_rank(BitMatrix.zeros(4, 5))
        assert rank == 0 and pivots == ()

    def test_dependent_rows(self):
        m = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        _, rank, _ = rref_rank(m)
        assert rank == 2

    @settings(max_examples=60, deadline=None)
    @given(dense_matrices())
    def test_idempotent(self, arr):
        red, rank, pivots = rref_rank(BitMatrix.from_dense(arr))
        red2, rank2, pivots2 = rref_rank(red)
        assert red2 == red and rank2 == rank and pivots2 == pivots

    @settings(max_examples=60, deadline=None)
    @given(dense_matrices())
    def test_rank_nullity(self, arr):
        m = BitMatrix.from_dense(arr)
        _, rank, _ = rref_rank(m)
        assert rank + kernel_basis(m).dim == m.cols


class TestKernel:
    def test_identity_kernel_zero(self):
        assert kernel_basis(BitMatrix.identity(4)).dim == 0

    def test_zero_matrix_full_kernel(self):
        k = kernel_basis(BitMatrix.zeros(2, 4))
        assert k.dim == 4

    def test_parity_equation(self):
        k = kernel_basis(BitMatrix.from_dense([[1, 1]]))
        assert k.dim == 1
        assert k.basis.to_dense().tolist() == [[1, 1]]

    @settings(max_examples=40, deadline=None)
    @given(dense_matrices())
    def test_kernel_members(self, arr):
        m = BitMatrix.from_dense(arr)
        k = kernel_basis(m)
        for row in k.basis.to_dense():
            assert not m.mul_vector(row).any()


class TestCombine:
    def test_axis_spans(self):
        a = Subspace.from_rows(3, np.array([[1, 0, 0]], dtype=np.uint8))
        b = Subspace.from_rows(3, np.array([[0, 1, 0]], dtype=np.uint8))
        assert subspace_combine(a, b, "sum").dim == 2
        assert subspace_combine(a, b, "intersect").dim == 0

    def test_idempotence(self):
        a = Subspace.from_rows(3, np.array([[1, 1, 0], [0, 0, 1]], dtype=np.uint8))
        assert subspace_sum(a, a) == a
        assert subspace_intersect(a, a) == a

    def test_intersection_by_enumeration(self):
        a = Subspace.from_rows(3, np.array([[1, 1, 0]], dtype=np.uint8))
        b = Subspace.from_rows(3, np.array([[0, 1, 1], [1, 0, 1]], dtype=np.uint8))
        got = subspace_intersect(a, b)
        expected = subspace_vectors(a) & subspace_vectors(b)
        assert subspace_vectors(got) == expected
        assert got.dim == 1 and got.contains_vector(np.array([1, 1, 0]))

    def test_ambient_mismatch(self):
        a = Subspace.full(2)
        b = Subspace.full(3)
        with pytest.raises(GF2Error):
            subspace_sum(a, b)

    @settings(max_examples=40, deadline=None)
    @given(dense_matrices(max_rows=4, max_cols=6), dense_matrices(max_rows=4, max_cols=6))
    def test_modular_dimension_law(self, ar, br):
        n = max(ar.shape[1], br.shape[1])
        a = Subspace.from_rows(n, np.pad(ar, ((0, 0), (0, n - ar.shape[1]))))
        b = Subspace.from_rows(n, np.pad(br, ((0, 0), (0, n - br.shape[1]))))
        assert a.dim + b.dim == subspace_sum(a, b).dim + subspace_intersect(a, b).dim


class TestPreimage:
    def test_full_target(self):
        m = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1]])
        assert preimage(m, Subspace.full(2)).dim == 3

    def test_zero_target_is_kernel(self):
        m = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1]])
        assert preimage(m, Subspace.zero(2)) == kernel_basis(m)

    def test_identity_map(self):
        m = BitMatrix.identity(2)
        s = Subspace.from_rows(2, np.array([[1, 0]], dtype=np.uint8))
        got = preimage(m, s)
        assert got == s

    @settings(max_examples=40, deadline=None)
    @given(dense_matrices(max_rows=5, max_cols=5), dense_matrices(max_rows=3, max_cols=5))
    def test_members_land_in_target(self, arr, srr):
        m = BitMatrix.from_dense(arr)
        s = Subspace.from_rows(m.rows, np.pad(srr, ((0, 0), (0, max(0, m.rows - srr.shape[1]))))[:, : m.rows]) if m.rows else Subspace.zero(0)
        pre = preimage(m, s)
        for row in pre.basis.to_dense():
            assert s.contains_vector(m.mul_vector(row))


class TestQuotient:
    def test_full_by_zero(self):
        assert quotient_dim(Subspace.full(4), Subspace.zero(4)) == 4

    def test_self(self):
        a = Subspace.from_rows(4, np.array([[1, 0, 1, 0]], dtype=np.uint8))
        assert quotient_dim(a, a) == 0

    def test_not_a_subspace(self):
        a = Subspace.from_rows(3, np.array([[1, 0, 0]], dtype=np.uint8))
        b = Subspace.from_rows(3, np.array([[0, 1, 0]], dtype=np.uint8))
        with pytest.raises(GF2Error, match="not a subspace"):
            quotient_dim(a, b)


class TestInducedMap:
    def test_identity_full(self):
        m = BitMatrix.identity(3)
        full = Subspace.full(3)
        zero = Subspace.zero(3)
        got = induced_map(m, full, zero, full, zero)
        assert got == BitMatrix.identity(3)

    def test_zero_domain(self):
        m = BitMatrix.identity(3)
        a = Subspace.from_rows(3, np.array([[1, 1, 0]], dtype=np.uint8))
        got = induced_map(m, a, a, Subspace.full(3), a)
        assert got.shape == (2, 0)

    def test_containment_error_names_side(self):
        m = BitMatrix.from_dense([[1, 0], [0, 0]])
        full = Subspace.full(2)
        tgt = Subspace.from_rows(2, np.array([[0, 1]], dtype=np.uint8))
        with pytest.raises(GF2Error, match="dom_a into cod_c"):
            induced_map(m, full, Subspace.zero(2), tgt, Subspace.zero(2))


class TestCanonicality:
    @settings(max_examples=40, deadline=None)
    @given(dense_matrices(max_rows=5, max_cols=6), st.randoms(use_true_random=False))
    def test_shuffled_spanning_rows(self, arr, rnd):
        rows = [r for r in arr]
        rnd.shuffle(rows)
        shuffled = np.array(rows, dtype=np.uint8).reshape(arr.shape)
        assert Subspace.from_rows(arr.shape[1], arr) == Subspace.from_rows(
            arr.shape[1], shuffled
        )

    def test_operation_order_independence(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = Subspace.from_rows(6, rng.integers(0, 2, (3, 6), dtype=np.uint8))
            b = Subspace.from_rows(6, rng.integers(0, 2, (3, 6), dtype=np.uint8))
            c = Subspace.from_rows(6, rng.integers(0, 2, (2, 6), dtype=np.uint8))
            left = subspace_sum(subspace_sum(a, b), c)
            right = subspace_sum(a, subspace_sum(c, b))
            assert left == right and hash(left) == hash(right)


class TestArithmetic:
    @settings(max_examples=40, deadline=None)
    @given(dense_matrices(max_rows=5, max_cols=6), dense_matrices(max_rows=6, max_cols=4))
    def test_matmul_against_dense(self, a, b):
        b = b[: a.shape[1]]
        if b.shape[0] < a.shape[1]:
            b = np.pad(b, ((0, a.shape[1] - b.shape[0]), (0, 0)))
        got = BitMatrix.from_dense(a) @ BitMatrix.from_dense(b)
        want = (a.astype(int) @ b.astype(int)) % 2
        assert np.array_equal(got.to_dense(), want.astype(np.uint8))

    def test_solve_and_inverse(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = BitMatrix.from_dense(rng.integers(0, 2, (5, 5), dtype=np.uint8))
            b = BitMatrix.from_dense(rng.integers(0, 2, (5, 2), dtype=np.uint8))
            x = solve(a, b)
            if x is not None:
                assert a @ x == b
        m = BitMatrix.from_dense([[1, 1], [0, 1]])
        assert m @ inverse(m) == BitMatrix.identity(2)

    def test_annihilator_double(self):
        s = Subspace.from_rows(5, np.array([[1, 0, 1, 0, 1], [0, 1, 1, 0, 0]], dtype=np.uint8))
        assert annihilator(annihilator(s)) == s

    def test_apply_to_subspace(self):
        m = BitMatrix.from_dense([[1, 1, 0], [0, 0, 0]])
        s = Subspace.full(3)
        img = apply_to_subspace(m, s)
        assert img.dim == 1 and img.contains_vector(np.array([1, 0]))


class TestQuotientCoords:
    def test_roundtrip(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            a = Subspace.from_rows(7, rng.integers(0, 2, (5, 7), dtype=np.uint8))
            brows = rng.integers(0, 2, (2, max(a.dim, 1)), dtype=np.uint8)
            b = Subspace.from_rows(
                7,
                (brows[:, : a.dim].astype(int) @ a.basis.to_dense().astype(int) % 2).astype(np.uint8),
            ) if a.dim else Subspace.zero(7)
            qc = QuotientCoords(a, b)
            reps = qc.lift_rows()
            assert qc.project_rows(reps) == BitMatrix.identity(qc.dim)
