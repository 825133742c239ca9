from fractions import Fraction

import pytest

from snskit.algebra import Element, HalfInt, Window, G, L, M
from snskit.bialgebra import DLemmaParams, DNaturalParams, apply_dlemma, apply_dnatural
from snskit.cohomology import (
    build_derivation_system, inner_tabulation, representable_inner_space, solve_h1_window,
)
from snskit.linalg import SubspaceBasis, exact_kernel
from snskit.tensors import M0, TensorElement, WindowTooSmall, adjoint_act, tensor2


def d_prime(b):
    """L_n -> M_n, G_r -> M_r / 2: an outer derivation of the printed table."""
    if b.family == "L":
        return Element({M(b.index): 1})
    if b.family == "G":
        return Element({M(b.index): Fraction(1, 2)})
    return Element()


def formal_inner(b, cut):
    """x * u for u = sum 1/k M_{-k} (x) M_k - 1/4 sum M_{-s} (x) M_s, tails dropped."""
    terms = {}
    for k in range(1, cut + 1):
        terms[(M(-k), M(k))] = Fraction(1, k)
    for t in range(1, 2 * cut, 2):
        terms[(M(Fraction(-t, 2)), M(Fraction(t, 2)))] = Fraction(-1, 4)
    bound = cut - 6
    return adjoint_act(b, TensorElement(terms)).filter(
        lambda k: all(abs(v.degree) <= bound for v in k))


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        build_derivation_system(0, 0, Window(2, 3), "self")
    with pytest.raises(WindowTooSmall):
        build_derivation_system("1/2", 1, Window(2, 4), "tensor")
    build_derivation_system("1/2", 1, Window(2, "9/2"), "tensor")


def test_bad_target_and_parity():
    with pytest.raises(ValueError):
        build_derivation_system(0, 0, Window(1), "matrix")
    with pytest.raises(ValueError):
        build_derivation_system(0, "sideways", Window(1), "self")


def test_family_tabulations_lie_in_kernel_self():
    system = build_derivation_system(0, "even", Window(1, 2), "self")
    for p in (DLemmaParams(1, 0), DLemmaParams(0, 1)):
        assert system.satisfies(system.tabulate(lambda b, p=p: apply_dlemma(p, b)))


def test_family_tabulations_lie_in_kernel_tensor():
    system = build_derivation_system(0, "even", Window(1, 2), "tensor")
    for v in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        p = DNaturalParams.of(v)
        assert system.satisfies(system.tabulate(lambda b, p=p: apply_dnatural(p, b)))


def test_inner_tabulations_lie_in_kernel():
    window = Window(1, 3)
    system = build_derivation_system("1/2", "odd", window, "tensor")
    us = representable_inner_space("1/2", 1, window, "tensor")
    assert us
    for u in us:
        assert system.satisfies(inner_tabulation(system, u))


def test_perturbed_tabulation_violates_system():
    system = build_derivation_system(0, 0, Window(1, 2), "self")
    vec = system.tabulate(lambda b: apply_dlemma(DLemmaParams(1, 0), b))
    vec[(L(1), (M(1),))] = vec.get((L(1), (M(1),)), 0) + 1
    assert system.residual(vec)


def test_blocks_do_not_change_the_kernel():
    system = build_derivation_system(0, 0, Window(1, 2), "tensor")
    full = exact_kernel(system)
    parts = []
    for block in system.blocks().values():
        parts.extend(exact_kernel(block).vectors())
    assert SubspaceBasis.span(system.columns, parts) == full


def test_system_is_deterministic():
    a = build_derivation_system(0, 0, Window(1, 2), "tensor")
    b = build_derivation_system(0, 0, Window(1, 2), "tensor")
    assert a.columns == b.columns and a.rows == b.rows and a.tags == b.tags


def test_parity_mismatch_is_empty():
    rep = solve_h1_window("1/2", "even", Window(2, "9/2"), "tensor")
    assert rep.ncols == 0 and rep.quotient_dim_interior == 0


def test_self_target_dimensions():
    rep = solve_h1_window(0, 0, Window(2), "self")
    assert rep.inner.dim == 2 and rep.dnatural_span.dim == 2
    assert rep.inner_in_solution and rep.family_in_solution
    # the two-parameter family plus the extra derivation d_prime
    assert rep.quotient_dim_without_family == 3
    assert rep.quotient_dim_interior == 1
    assert not rep.solution_contained


def test_self_target_extra_class_is_d_prime():
    rep = solve_h1_window(0, 0, Window(3), "self")
    system = build_derivation_system(0, 0, Window(3), "self")
    assert system.satisfies(system.tabulate(d_prime))
    keep = system.interior_columns()
    extra = SubspaceBasis.span(keep, [system.tabulate(d_prime, system.interior_generators())])
    w = rep.inner + rep.dnatural_span + extra
    assert w.contains_subspace(rep.solution)


def test_tensor_target_extra_classes():
    window = Window(3)
    rep = solve_h1_window(0, 0, window, "tensor")
    assert (rep.quotient_dim_without_family, rep.quotient_dim_interior) == (7, 3)
    assert rep.details["quotient_by_weight_shift"] == {4: 3}
    system = build_derivation_system(0, 0, window, "tensor")
    gens = system.interior_generators()
    extras = [
        lambda b: tensor2(M0, d_prime(b)) if d_prime(b) else TensorElement(),
        lambda b: tensor2(d_prime(b), M0) if d_prime(b) else TensorElement(),
        lambda b: formal_inner(b, 20),
    ]
    for fn in extras:
        assert system.satisfies(system.tabulate(fn))
    span = SubspaceBasis.span(system.interior_columns(), [system.tabulate(fn, gens) for fn in extras])
    w = rep.inner + rep.dnatural_span
    assert (w + span).dim == w.dim + 3
    assert (w + span).contains_subspace(rep.solution)


@pytest.mark.parametrize("degree, parity", [("1", "even"), ("-1/2", "odd"), ("2", "even")])
def test_nonzero_degree_small_window(degree, parity):
    rep = solve_h1_window(degree, parity, Window(2, 4 + abs(HalfInt.of(degree).value)), "tensor")
    assert rep.quotient_dim_interior == 0
    assert rep.solution_contained and rep.inner_in_solution


def test_nonzero_degree_self_target():
    for degree, parity in (("1", 0), ("1/2", 1), ("-2", 0)):
        rep = solve_h1_window(degree, parity, Window(3, 6 + abs(HalfInt.of(degree).value)), "self")
        assert rep.quotient_dim_interior == 0


def test_report_fields():
    rep = solve_h1_window(0, 0, Window(1), "self")
    dims = rep.dimensions()
    assert dims["nullity"] == rep.ncols - rep.rank
    assert "quotient dimension" in rep.summary()
    assert rep.verdict in ("pass", "fail")
