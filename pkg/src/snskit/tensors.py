"""Tensor squares and cubes, the super-twist and super-cycle, and the adjoint
diagonal action of the algebra on them.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import (
    FAMILY_RANK, ZERO, BasisVector, Element, HalfInt, LinComb, Window, as_element,
    basis_in_window, bracket_monomial, sign,
)
from .linalg import LinearSystem, SubspaceBasis, exact_kernel
from .report import Report

M0 = BasisVector("M", 0)

MOD_C_TENSOR = "C⊗"
MOD_TSNS_C = "tsns_C"
_MOD_ALIASES = {"C⊗": MOD_C_TENSOR, "Cx": MOD_C_TENSOR, "C": MOD_C_TENSOR,
                "tsns_C": MOD_TSNS_C, "tsnsC": MOD_TSNS_C}


WEIGHT = {"L": 0, "G": 0, "Y": 1, "M": 2}


def key_weight(key) -> int:
    """Additive grading with L, G of weight 0, Y of weight 1 and M of weight 2.

    Every bracket in the table preserves it, so the action never mixes weights.
    """
    if isinstance(key, BasisVector):
        return WEIGHT[key.family]
    return sum(WEIGHT[b.family] for b in key)


class WindowTooSmall(ValueError):
    """The requested window leaves nothing to solve for."""


class _TensorBase(LinComb):
    __slots__ = ()

    @classmethod
    def _check_key(cls, key):
        key = tuple(key)
        if len(key) != cls.arity or not all(isinstance(b, BasisVector) for b in key):
            raise TypeError(f"{cls.__name__} keys must be {cls.arity}-tuples of BasisVector")
        return key

    @staticmethod
    def _key_order(key):
        return tuple((FAMILY_RANK[b.family], b.twice) for b in key)

    @staticmethod
    def key_degree(key):
        return Fraction(sum(b.twice for b in key), 2)

    @staticmethod
    def key_parity(key):
        return sum(b.parity for b in key) & 1


class TensorElement(_TensorBase):
    """A finite sum of ``a (x) b`` with exact coefficients."""

    __slots__ = ()
    arity = 2


class Tensor3(_TensorBase):
    """A finite sum of ``a (x) b (x) c``."""

    __slots__ = ()
    arity = 3


_TENSOR_TYPES = {1: Element, 2: TensorElement, 3: Tensor3}


def zero_of_arity(arity: int) -> LinComb:
    return _TENSOR_TYPES[arity]()


def _key_tuple(key, arity):
    return (key,) if arity == 1 else key


def _tuple_key(t, arity):
    return t[0] if arity == 1 else t


def tensor2(x, y) -> TensorElement:
    x = as_element(x)
    y = as_element(y)
    return TensorElement._from_clean({(a, b): ca * cb for a, ca in x._terms.items()
                                      for b, cb in y._terms.items()})


def tensor3(x, y, z) -> Tensor3:
    x, y, z = as_element(x), as_element(y), as_element(z)
    return Tensor3._from_clean({(a, b, c): ca * cb * cc
                                for a, ca in x._terms.items()
                                for b, cb in y._terms.items()
                                for c, cc in z._terms.items()})


def super_twist(t: TensorElement) -> TensorElement:
    """``x (x) y -> (-1)^{|x||y|} y (x) x``."""
    return TensorElement._from_clean({
        (b, a): (-c if a.parity & b.parity else c) for (a, b), c in t._terms.items()})


def super_cycle(t: Tensor3) -> Tensor3:
    """``x1 (x) x2 (x) x3 -> (-1)^{|x1|(|x2|+|x3|)} x2 (x) x3 (x) x1``."""
    out = {}
    for (a, b, c), k in t._terms.items():
        s = a.parity & ((b.parity + c.parity) & 1)
        out[(b, c, a)] = -k if s else k
    return Tensor3._from_clean(out)


@lru_cache(maxsize=1 << 20)
def act_on_key(x: BasisVector, key: tuple) -> tuple:
    """Action of a basis vector on one tensor monomial, as ``((key, coef), ...)``.

    Slot ``i`` picks up the Koszul sign ``(-1)^{|x|(|v_1|+...+|v_{i-1}|)}``.
    """
    out: dict = {}
    px = x.parity
    passed = 0
    for i, v in enumerate(key):
        hit = bracket_monomial(x, v)
        if hit is not None:
            new = key[:i] + (hit[0],) + key[i + 1:]
            c = hit[1]
            if px & passed:
                c = -c
            if new in out:
                out[new] += c
            else:
                out[new] = c
        passed ^= v.parity
    return tuple((k, c) for k, c in out.items() if c)


def adjoint_act(x, t: LinComb) -> LinComb:
    """The adjoint diagonal action ``x * t`` on elements, tensor squares or cubes.

    Parity-mixed ``x`` is handled termwise, which is the same as acting with
    each homogeneous part and summing.
    """
    x = as_element(x)
    arity = t.arity
    out: dict = {}
    for b, cb in x._terms.items():
        for key, ct in t._terms.items():
            for k2, c in act_on_key(b, _key_tuple(key, arity)):
                k2 = _tuple_key(k2, arity)
                v = out.get(k2, ZERO) + cb * ct * c
                if v:
                    out[k2] = v
                else:
                    out.pop(k2, None)
    return type(t)._from_clean(out)


def antisymmetrize(t: TensorElement) -> TensorElement:
    return (t - super_twist(t)) * Fraction(1, 2)


def is_antisymmetric(t: TensorElement) -> bool:
    """Membership in ``Im(1 (x) 1 - tau)``, decided by ``tau(t) == -t``."""
    return super_twist(t) == -t


def symmetric_part(t: TensorElement) -> TensorElement:
    return (t + super_twist(t)) * Fraction(1, 2)


def random_even_antisymmetric(rng, max_terms: int = 8, radius=3) -> TensorElement:
    """A seeded random even element of ``Im(1 (x) 1 - tau)``.

    ``max_terms`` monomials ``a (x) b`` of even total parity with
    ``|deg a|, |deg b| <= radius`` and small nonzero rational coefficients are
    drawn from ``rng`` (a :class:`random.Random`) and then antisymmetrized.
    The result is never zero.
    """
    basis = basis_in_window(radius)
    while True:
        terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            a = rng.choice(basis)
            b = rng.choice([v for v in basis if v.parity == a.parity])
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
            terms[(a, b)] = terms.get((a, b), ZERO) + c
        r = antisymmetrize(TensorElement(terms))
        if not r.is_zero() and len(r) <= max_terms:
            return r


def cybe_c(r: TensorElement) -> Tensor3:
    """``c(r) = [r12, r13] + [r12, r23] + [r13, r23]`` from the component formulas.

    With ``r = sum a_i (x) b_i``::

        [r12, r23] = sum a_i (x) [b_i, a_j] (x) b_j
        [r12, r13] = sum (-1)^{|a_j||b_i|} [a_i, a_j] (x) b_i (x) b_j
        [r13, r23] = sum (-1)^{|a_j||b_i|} a_i (x) a_j (x) [b_i, b_j]
    """
    terms = list(r._terms.items())
    out: dict = {}

    def add(key, c):
        v = out.get(key, ZERO) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (ai, bi), ci in terms:
        for (aj, bj), cj in terms:
            c = ci * cj
            s = -c if aj.parity & bi.parity else c
            hit = bracket_monomial(bi, aj)
            if hit is not None:
                add((ai, hit[0], bj), c * hit[1])
            hit = bracket_monomial(ai, aj)
            if hit is not None:
                add((hit[0], bi, bj), s * hit[1])
            hit = bracket_monomial(bi, bj)
            if hit is not None:
                add((ai, aj, hit[0]), s * hit[1])
    return Tensor3._from_clean(out)


def mybe_check(r: TensorElement, window, max_counterexamples: int = 10) -> Report:
    """``x * c(r) = 0`` for every basis x with ``|deg x| <= gen_radius``."""
    if not isinstance(window, Window):
        window = Window(window)
    report = Report("mybe", max_counterexamples=max_counterexamples)
    c = cybe_c(r)
    report.details["c(r)_terms"] = len(c)
    for x in window.generators():
        report.check(f"x = {x}", Tensor3(), adjoint_act(x, c))
    return report


def reduce_mod(t: LinComb, quotient: str = MOD_C_TENSOR) -> LinComb:
    """Drop the all-``M[0]`` term (``C⊗``) or every term touching ``M[0]`` (``tsns_C``)."""
    mode = _MOD_ALIASES.get(quotient)
    if mode is None:
        raise ValueError(f"unknown quotient {quotient!r}; expected 'C⊗' or 'tsns_C'")
    arity = t.arity
    if mode == MOD_C_TENSOR:
        dead = (M0,) * arity if arity > 1 else M0
        return t.filter(lambda k: k != dead)
    if arity == 1:
        return t.filter(lambda k: k != M0)
    return t.filter(lambda k: M0 not in k)


def keys_of_degree(total_twice: int, parity: int | None, arity: int, comp_twice: int):
    """Tensor monomials of a given total (doubled) degree with bounded components.

    Ordered canonically; ``parity=None`` means either parity.
    """
    basis = basis_in_window(HalfInt(comp_twice))
    by_twice: dict[int, list] = {}
    for b in basis:
        by_twice.setdefault(b.twice, []).append(b)
    out = []
    if arity == 1:
        out = [(b,) for b in by_twice.get(total_twice, [])]
    elif arity == 2:
        for a in basis:
            for b in by_twice.get(total_twice - a.twice, []):
                out.append((a, b))
    else:
        for a, b in product(basis, repeat=2):
            for c in by_twice.get(total_twice - a.twice - b.twice, []):
                out.append((a, b, c))
    if parity is not None:
        out = [k for k in out if (sum(v.parity for v in k) & 1) == parity]
    out.sort(key=lambda k: tuple((FAMILY_RANK[v.family], v.twice) for v in k))
    return out


def centralizer_window(window, arity: int = 2) -> SubspaceBasis:
    """Tensors ``t`` (interior support) killed by every window generator.

    Unknowns are monomials whose component degrees are bounded by
    ``comp_radius - gen_radius``, so every action term stays representable.
    The action is homogeneous in total degree, parity and weight, so the
    system splits into independent blocks.
    """
    if arity not in (2, 3):
        raise ValueError("arity must be 2 or 3")
    if not isinstance(window, Window):
        window = Window(window)
    inner_twice = window.comp_radius.twice - window.gen_radius.twice
    support = basis_in_window(HalfInt(inner_twice))
    if not support:
        raise WindowTooSmall("interior support is empty")
    gens = window.generators()
    keys_all = [k for k in product(support, repeat=arity)]
    keys_all.sort(key=lambda k: tuple((FAMILY_RANK[v.family], v.twice) for v in k))
    blocks: dict[tuple, list] = {}
    for k in keys_all:
        block = (sum(v.twice for v in k), sum(v.parity for v in k) & 1, key_weight(k))
        blocks.setdefault(block, []).append(k)

    labels = keys_all
    vectors = []
    for _, cols in sorted(blocks.items()):
        system = LinearSystem(cols)
        for x in gens:
            eqs: dict = {}
            for j, key in enumerate(cols):
                for k2, c in act_on_key(x, key):
                    eqs.setdefault(k2, {})[j] = c
            # insertion order is deterministic, so rows need no sorting
            for k2, row in eqs.items():
                system.add_index_row(row, tag=(x, k2))
        ker = exact_kernel(system)
        vectors.extend(ker.vectors())
    return SubspaceBasis.span(labels, vectors)


def subspace_as_tensors(space: SubspaceBasis) -> list[LinComb]:
    """Basis vectors of a subspace over tensor monomials, as tensors."""
    out = []
    for vec in space.vectors():
        arity = len(next(iter(vec)))
        out.append(_TENSOR_TYPES[arity](vec))
    return out
