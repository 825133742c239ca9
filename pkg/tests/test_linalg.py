from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from snskit.linalg import (
    LabelMismatch, LinearSystem, SubspaceBasis, exact_kernel, projected_kernel, rref,
    subspace_contains,
)

small = st.integers(-3, 3).map(Fraction) | st.fractions(-2, 2, max_denominator=3)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(lambda n: st.lists(
        st.lists(small, min_size=n, max_size=n), min_size=1, max_size=max_rows))


@given(matrices())
def test_rank_and_nullity_match_sympy(rows):
    system = LinearSystem.from_dense(rows)
    ker = exact_kernel(system)
    oracle = sympy.Matrix(rows)
    assert system.rank() == oracle.rank()
    assert ker.dim == len(oracle.nullspace())
    for v in ker.vectors():
        assert system.satisfies(v)


@given(matrices())
def test_rref_matches_sympy(rows):
    n = len(rows[0])
    ours = rref([{j: c for j, c in enumerate(r) if c} for r in rows], n)
    theirs, _ = sympy.Matrix(rows).rref()
    dense = [[r.get(j, 0) for j in range(n)] for r in ours]
    expected = [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in row]
                for row in theirs.tolist() if any(row)]
    assert dense == expected


@given(matrices(max_cols=7), st.data())
def test_projected_kernel_is_projection_of_kernel(rows, data):
    system = LinearSystem.from_dense(rows)
    n = system.ncols
    keep = data.draw(st.lists(st.integers(0, n - 1), unique=True, min_size=1))
    keep = sorted(keep)
    proj, rank = projected_kernel(system, keep)
    assert rank == system.rank()
    assert proj == exact_kernel(system).restrict(keep)


def test_kernel_example():
    system = LinearSystem.from_dense([[1, 1, 0], [0, 1, -1]], columns=["a", "b", "c"])
    ker = exact_kernel(system)
    assert ker.vectors() == [{"a": 1, "b": -1, "c": -1}]
    assert subspace_contains(ker, {"a": -2, "b": 2, "c": 2})
    assert not ker.contains({"a": 1})


def test_presolve_keeps_forced_zeros_and_duplicates_out():
    system = LinearSystem(["x", "y", "z"])
    system.add_row({"x": 3})
    system.add_row({"x": 1, "y": 2})
    system.add_row({"y": 1, "z": -1})
    system.add_row({"y": 2, "z": -2})
    ker = exact_kernel(system)
    assert ker.dim == 0


def test_subspace_operations():
    labels = ["p", "q", "r"]
    a = SubspaceBasis.span(labels, [{"p": 1, "q": 1}])
    b = SubspaceBasis.span(labels, [[0, 0, 2]])
    s = a + b
    assert s.dim == 2
    assert s.contains_subspace(a) and s.contains_subspace(b)
    assert not a.contains_subspace(b)
    assert s.restrict(["q", "r"]).dim == 2
    assert SubspaceBasis.span(labels, [[2, 2, 0], [1, 1, 0]]) == a
    assert s.dense() == [[1, 1, 0], [0, 0, 1]]


def test_label_mismatch():
    a = SubspaceBasis.span(["p"], [[1]])
    with pytest.raises(LabelMismatch):
        a.contains({"z": 1})
    with pytest.raises(LabelMismatch):
        a.contains([1, 2])
    with pytest.raises(LabelMismatch):
        a + SubspaceBasis.span(["q"], [[1]])
    system = LinearSystem(["p"])
    with pytest.raises(LabelMismatch):
        system.add_row({"q": 1})
    with pytest.raises(LabelMismatch):
        system.residual({"q": 1})


def test_residual_reports_tags():
    system = LinearSystem(["a", "b"])
    system.add_row({"a": 1, "b": -1}, tag="equal")
    system.add_row({"a": 1}, tag="zero")
    assert system.residual({"a": 1, "b": 1}) == ["zero"]
    assert system.satisfies({})


def test_big_integers_stay_exact():
    big = 10 ** 40 + 1
    system = LinearSystem.from_dense([[big, 1], [1, Fraction(1, big)]])
    assert system.rank() == 1
