"""Property-based checks of the exact linear algebra and the structure pipeline."""

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from hypothesis import given, settings, strategies as st
from sympy import QQ

from splitsuper.models.roots import RootFunctional
from splitsuper.services.connection_service import check_witness, connection_classes, connection_witness
from splitsuper.services.homsuper_service import bracket_eval, twist_apply, validate, yau_twist
from splitsuper.services.oracle_service import fuzz_instance, generate_ideal, sl2, sl2_twist
from splitsuper.services.rootspace_service import reconstruction_holds, root_decomposition
from splitsuper.utils.exactlin import (
    Subspace, kernel, matrix, matrix_rows, matvec, rank, rref, subspace_intersect, subspace_sum
)

small = st.integers(min_value=-4, max_value=4)
nonzero_rational = st.builds(
    lambda p, q: QQ(p, q),
    st.integers(min_value=1, max_value=6) | st.integers(min_value=-6, max_value=-1),
    st.integers(min_value=1, max_value=6),
)


@st.composite
def integer_matrix(draw, max_rows=4, max_cols=4):
    nrows = draw(st.integers(min_value=1, max_value=max_rows))
    ncols = draw(st.integers(min_value=1, max_value=max_cols))
    return matrix([[draw(small) for _ in range(ncols)] for _ in range(nrows)], ncols)


@st.composite
def subspace_pair(draw, dim=4):
    def vectors():
        count = draw(st.integers(min_value=0, max_value=dim))
        return [tuple(draw(small) for _ in range(dim)) for _ in range(count)]
    return Subspace.span(dim, vectors()), Subspace.span(dim, vectors())


class TestExactLinearAlgebra:
    @given(m=integer_matrix())
    def test_rref_is_idempotent(self, m):
        once = rref(m)
        assert matrix_rows(rref(once)) == matrix_rows(once)

    @given(m=integer_matrix())
    def test_rank_nullity(self, m):
        null = kernel(m)
        assert rank(m) + null.dim == m.shape[1]
        for v in null.basis:
            assert all(c == 0 for c in matvec(m, v))

    @given(pair=subspace_pair())
    def test_grassmann_formula(self, pair):
        a, b = pair
        assert subspace_sum(a, b).dim + subspace_intersect(a, b).dim == a.dim + b.dim

    @given(pair=subspace_pair())
    def test_sum_and_intersection_commute(self, pair):
        a, b = pair
        assert subspace_sum(a, b) == subspace_sum(b, a)
        assert subspace_intersect(a, b) == subspace_intersect(b, a)


class TestYauTwistedSl2:
    @given(t=nonzero_rational)
    @settings(deadline=None, max_examples=25)
    def test_valid_with_root_value_two(self, t):
        alg = yau_twist(sl2(), sl2_twist(t))
        assert validate(alg).passed
        dec = root_decomposition(alg, Subspace.coordinate(3, [0]))
        assert list(dec.roots) == [RootFunctional.of([-2]), RootFunctional.of([2])]

    @given(t=nonzero_rational, coefficients=st.lists(small, min_size=6, max_size=6))
    @settings(deadline=None, max_examples=25)
    def test_twist_is_multiplicative(self, t, coefficients):
        alg = yau_twist(sl2(), sl2_twist(t))
        x, y = tuple(coefficients[:3]), tuple(coefficients[3:])
        left = twist_apply(alg, bracket_eval(alg, x, y))
        right = bracket_eval(alg, twist_apply(alg, x), twist_apply(alg, y))
        assert left == right


class TestRandomInstances:
    @given(seed=st.integers(min_value=0, max_value=10_000))
    @settings(deadline=None, max_examples=15)
    def test_pipeline_invariants(self, seed):
        alg, H = fuzz_instance(seed, 7)
        assert validate(alg).passed
        dec = root_decomposition(alg, H)
        assert reconstruction_holds(dec)
        partition = connection_classes(dec)
        assert sorted(r for members in partition.classes for r in members) == list(range(len(dec.roots)))
        for members in partition.classes:
            witness = connection_witness(dec, members[0], members[-1])
            assert witness is not None
            assert check_witness(dec, witness) == []

    @given(seed=st.integers(min_value=0, max_value=10_000), index=st.integers(min_value=0, max_value=6))
    @settings(deadline=None, max_examples=15)
    def test_generated_ideal_contains_seed(self, seed, index):
        alg, _ = fuzz_instance(seed, 7)
        vector = tuple(1 if i == index % alg.dim else 0 for i in range(alg.dim))
        closure = generate_ideal(alg, vector).closure
        assert closure.contains(vector)
