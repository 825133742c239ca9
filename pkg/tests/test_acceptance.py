"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in ``CRITERIA`` and printed in the terminal summary
by the hook in conftest.py, so they show up even without ``-s``.
"""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from snskit.algebra import Element, HalfInt, Window, L, M, basis_in_window, bracket, verify_superalgebra
from snskit.bialgebra import (
    DLemmaParams, DNaturalParams, check_coalgebra, check_compatibility, check_derivation,
    dlemma_table, dnatural_table, verify_lemma21,
)
from snskit.cohomology import solve_h1_window
from snskit.dsl import format_element, format_tensor, parse_element, parse_tensor, parse_tensor3
from snskit.tensors import (
    Tensor3, TensorElement, centralizer_window, cybe_c, mybe_check, random_even_antisymmetric,
    subspace_as_tensors,
)

CRITERIA: dict[int, str] = {}


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    CRITERIA[n] = line
    print(line)
    return ok


def test_criterion_1_algebra_validity():
    start = time.perf_counter()
    rep = verify_superalgebra(Window(6))
    elapsed = time.perf_counter() - start
    ok = rep.passed and elapsed < 120
    assert record(1, ok, f"{rep.checked_count} checks, {rep.failure_count} failures, "
                         f"{elapsed:.1f}s at gen_radius 6")


def test_criterion_2_grading():
    basis = basis_in_window(6)
    bad = [b for b in basis
           if bracket(L(0), b) != b.degree * Element({b: 1}) or bracket(M(0), b) != Element()]
    assert record(2, not bad, f"{len(basis)} basis vectors, {len(bad)} failures")


def test_criterion_3_lemma21():
    rng = random.Random(2024)
    gens = basis_in_window(3)
    checks = failures = 0
    for _ in range(20):
        r = random_even_antisymmetric(rng, max_terms=8, radius=3)
        for x in gens:
            rep = verify_lemma21(r, x)
            checks += rep.checked_count
            failures += rep.failure_count
    assert record(3, failures == 0, f"20 random r x {len(gens)} generators, "
                                    f"{checks} checks, {failures} failures")


def test_criterion_4_triangular():
    tri = parse_tensor("L[0] (x) L[1] - L[1] (x) L[0]")
    tri_ok = cybe_c(tri) == Tensor3() and mybe_check(tri, Window(4)).passed
    rng = random.Random(4)
    r = random_even_antisymmetric(rng, max_terms=4, radius=3)
    while cybe_c(r) == Tensor3():
        r = random_even_antisymmetric(rng, max_terms=4, radius=3)
    rep = mybe_check(r, Window(4), max_counterexamples=1)
    witness = rep.counterexamples[0].description if rep.counterexamples else "none"
    ok = tri_ok and not rep.passed
    assert record(4, ok, f"triangular c(r)=0 and MYBE pass: {tri_ok}; "
                         f"non-CYBE r = {format_tensor(r)} fails MYBE with {witness}")


def test_criterion_5_centralizer():
    two = [str(t) for t in subspace_as_tensors(centralizer_window(Window(3, 6), 2))]
    three = [str(t) for t in subspace_as_tensors(centralizer_window(Window(3, 6), 3))]
    ok = two == ["M[0] (x) M[0]"] and three == ["M[0] (x) M[0] (x) M[0]"]
    assert record(5, ok, f"arity 2: {two}; arity 3: {three}")


def test_criterion_6_derivation_families():
    w = Window(4)
    dn = check_derivation(dnatural_table(DNaturalParams.of((1, 2, -3, 5)), 8), w)
    dl = check_derivation(dlemma_table(DLemmaParams(1, 1), 8), w)
    ok = dn.passed and dl.passed
    assert record(6, ok, f"dnatural(1,2,-3,5): {dn.failure_count} counterexamples in "
                         f"{dn.checked_count} checks; dlemma(1,1): {dl.failure_count} in "
                         f"{dl.checked_count}")


def test_criterion_7_h1_degree_zero():
    """Expected tensor quotient 0 (4 without the family) and self quotient 2.

    The printed bracket table admits outer derivations the family does not
    cover, so the observed numbers differ; see the decisions ledger.
    """
    start = time.perf_counter()
    tensor = solve_h1_window(0, "even", Window(4, 8), "tensor")
    self_ = solve_h1_window(0, "even", Window(4, 8), "self")
    elapsed = time.perf_counter() - start
    got = (tensor.quotient_dim_interior, tensor.quotient_dim_without_family,
           self_.quotient_dim_without_family)
    ok = tensor.solution_contained and got == (0, 4, 2) and elapsed < 300
    assert record(7, ok, f"tensor quotient {got[0]} (expected 0), without family {got[1]} "
                         f"(expected 4), self {got[2]} (expected 2); "
                         f"extra classes by weight shift {tensor.details['quotient_by_weight_shift']}; "
                         f"{elapsed:.0f}s")


def test_criterion_8_nonzero_degree():
    results = []
    for p in ("1/2", "-1/2", "1", "-1", "3/2", "-3/2", "2"):
        for parity in ("even", "odd"):
            d = HalfInt.of(p)
            rep = solve_h1_window(d, parity, Window(4, 8 + abs(d.value)), "tensor")
            results.append((p, parity, rep.quotient_dim_interior))
    bad = [x for x in results if x[2] != 0]
    assert record(8, not bad, f"{len(results)} (degree, parity) cases, nonzero quotients: {bad}")


def test_criterion_9_bialgebra_forward():
    w = Window(4)
    good = dnatural_table(DNaturalParams.of((1, -1, 2, -2)), 8)
    coal, comp = check_coalgebra(good, w), check_compatibility(good, w)
    bad = check_coalgebra(dnatural_table(DNaturalParams.of((1, 0, 0, 0)), 8), w,
                          max_counterexamples=1000)
    witnesses = [c.description for c in bad.counterexamples
                 if c.description.startswith("anti-cocommutativity")]
    ok = coal.passed and comp.passed and bool(witnesses)
    assert record(9, ok, f"D0 params: coalgebra {coal.verdict}, compatibility {comp.verdict}; "
                         f"(1,0,0,0) witness: {witnesses[0] if witnesses else 'none'}")


def _random_element(rng, basis, n):
    return Element({rng.choice(basis): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7))
                    for _ in range(n)})


def test_criterion_10_dsl_and_reports(tmp_path):
    rng = random.Random(10)
    basis = basis_in_window(5)
    mismatches = 0
    for i in range(1000):
        n = rng.randint(0, 6)
        kind = i % 3
        if kind == 0:
            x = _random_element(rng, basis, n)
            mismatches += parse_element(format_element(x)) != x
        else:
            arity = kind + 1
            terms = {tuple(rng.choice(basis) for _ in range(arity)):
                     Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7)) for _ in range(n)}
            t = TensorElement(terms) if arity == 2 else Tensor3(terms)
            back = parse_tensor(format_tensor(t)) if arity == 2 else parse_tensor3(str(t))
            mismatches += back != t
    outputs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        subprocess.run([sys.executable, "-m", "snskit.cli", "--seed", "3", "--json", str(path),
                        "lemma21", "--random", "2", "--radius", "1"], capture_output=True)
        outputs.append(path.read_bytes())
    same = outputs[0] == outputs[1] and json.loads(outputs[0])["command"] == "lemma21"
    ok = mismatches == 0 and same
    assert record(10, ok, f"1000 round-trips, {mismatches} mismatches; CLI JSON byte-identical: {same}")
