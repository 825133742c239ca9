"""Coboundaries, the two degree-zero derivation families, and checkers for the
supercoalgebra, compatibility and derivation identities.

Maps out of the algebra are handled as finite tables over a window
(:class:`CoproductTable`).  A checker that needs an image the table does not
hold raises :class:`MissingImage` instead of truncating.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import (
    ZERO, BasisVector, Element, HalfInt, LinComb, Window, as_element, basis_in_window,
    bracket_monomial, iter_window_pairs,
)
from .report import Report
from .tensors import (
    MOD_C_TENSOR, M0, Tensor3, TensorElement, adjoint_act, cybe_c, is_antisymmetric,
    reduce_mod, super_cycle, super_twist, zero_of_arity,
)


class OddCoboundary(ValueError):
    """The coboundary construction needs an even ``r``."""


class NotAntisymmetric(ValueError):
    pass


class MissingImage(LookupError):
    """A checker needed the image of a generator the table does not define."""


@dataclass(frozen=True)
class DLemmaParams:
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)


@dataclass(frozen=True)
class DNaturalParams:
    alpha: Fraction = Fraction(0)
    alpha_dag: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    beta_dag: Fraction = Fraction(0)

    @classmethod
    def of(cls, values) -> "DNaturalParams":
        a, ad, b, bd = (Fraction(v) for v in values)
        return cls(a, ad, b, bd)

    @property
    def in_D0(self) -> bool:
        """True for the antisymmetric subfamily (``alpha_dag = -alpha``, ``beta_dag = -beta``)."""
        return self.alpha_dag == -self.alpha and self.beta_dag == -self.beta


class CoproductTable:
    """A linear map from the algebra, given by its images on finitely many basis vectors.

    ``arity`` is 1 for maps into the algebra and 2 for maps into the tensor
    square; ``parity`` is the declared parity of the map.
    """

    def __init__(self, images: dict, arity: int = 2, parity: int = 0):
        self.arity = arity
        self.parity = parity & 1
        self.images: dict[BasisVector, LinComb] = {}
        for b, img in images.items():
            if img.arity != arity:
                raise TypeError(f"image of {b} has arity {img.arity}, expected {arity}")
            for p in img.parities():
                if p != (b.parity + self.parity) & 1:
                    raise ValueError(f"image of {b} breaks parity additivity for a map of "
                                     f"parity {self.parity}")
            self.images[b] = img

    @classmethod
    def tabulate(cls, fn: Callable[[BasisVector], LinComb], radius, arity: int = 2,
                 parity: int = 0) -> "CoproductTable":
        return cls({b: fn(b) for b in basis_in_window(radius)}, arity=arity, parity=parity)

    def image(self, b: BasisVector) -> LinComb:
        try:
            return self.images[b]
        except KeyError:
            raise MissingImage(f"no image recorded for {b}") from None

    def __call__(self, x) -> LinComb:
        total = zero_of_arity(self.arity)
        for b, c in as_element(x).items():
            total = total + c * self.image(b)
        return total

    def __contains__(self, b):
        return b in self.images

    def generators(self) -> list[BasisVector]:
        return sorted(self.images, key=BasisVector.sort_key)

    def __add__(self, other: "CoproductTable") -> "CoproductTable":
        if other.arity != self.arity or other.parity != self.parity:
            raise ValueError("tables differ in arity or parity")
        keys = set(self.images) | set(other.images)
        zero = zero_of_arity(self.arity)
        return CoproductTable({b: self.images.get(b, zero) + other.images.get(b, zero)
                               for b in keys}, self.arity, self.parity)

    def scaled(self, k) -> "CoproductTable":
        return CoproductTable({b: img * k for b, img in self.images.items()},
                              self.arity, self.parity)

    def with_image(self, b: BasisVector, img: LinComb) -> "CoproductTable":
        images = dict(self.images)
        images[b] = img
        return CoproductTable(images, self.arity, self.parity)

    def reduced(self, quotient: str = MOD_C_TENSOR) -> "CoproductTable":
        return CoproductTable({b: reduce_mod(img, quotient) for b, img in self.images.items()},
                              self.arity, self.parity)

    def degree_shifts(self) -> set:
        return {img.key_degree(k) - b.degree
                for b, img in self.images.items() for k in img.terms}

    def degree(self):
        """The map degree if every image term shifts degree by the same amount."""
        shifts = self.degree_shifts()
        return shifts.pop() if len(shifts) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, CoproductTable):
            return NotImplemented
        zero = zero_of_arity(self.arity)
        keys = set(self.images) | set(other.images)
        return (self.arity == other.arity and self.parity == other.parity
                and all(self.images.get(b, zero) == other.images.get(b, zero) for b in keys))

    def __repr__(self):
        return f"CoproductTable({len(self.images)} generators, arity={self.arity}, parity={self.parity})"


# ---------------------------------------------------------------------------
# Maps


def _require_even(r: TensorElement) -> None:
    if any(p == 1 for p in r.parities()):
        raise OddCoboundary("r has odd-parity terms; the coboundary needs an even r")


def delta_r(r: TensorElement, x) -> TensorElement:
    """``Delta_r(x) = (-1)^{|r||x|} x * r`` for even ``r``."""
    _require_even(r)
    return adjoint_act(x, r)


def inner_derivation(u: LinComb, x) -> LinComb:
    """``x -> (-1)^{|u||x|} x * u`` for a parity-homogeneous ``u``."""
    pu = u.parity()
    if pu is None:
        if u.is_zero():
            return u
        raise ValueError("inner derivations need a parity-homogeneous u")
    x = as_element(x)
    total = zero_of_arity(u.arity)
    for px, part in x.parity_parts().items():
        term = adjoint_act(part, u)
        total = total + (-term if pu & px else term)
    return total


def _dnatural_basis(p: DNaturalParams, b: BasisVector) -> TensorElement:
    fam = b.family
    if fam in ("L", "G"):
        k = b.degree
        first, second = p.alpha * k, p.alpha_dag * k
        target = BasisVector("M", b.twice)
    elif fam == "Y":
        first, second = p.beta, p.beta_dag
        target = b
    else:
        first, second = 2 * p.beta, 2 * p.beta_dag
        target = b
    # a list, not a dict: for M[0] both keys coincide and must add up
    return TensorElement([((M0, target), first), ((target, M0), second)])


def apply_dnatural(params: DNaturalParams, x) -> TensorElement:
    """The four-parameter degree-zero derivation into the tensor square."""
    total = TensorElement()
    for b, c in as_element(x).items():
        total = total + c * _dnatural_basis(params, b)
    return total


def _dlemma_basis(p: DLemmaParams, b: BasisVector) -> Element:
    fam = b.family
    if fam in ("L", "G"):
        return Element({BasisVector("M", b.twice): p.alpha * b.degree})
    if fam == "Y":
        return Element({b: p.beta})
    return Element({b: 2 * p.beta})


def apply_dlemma(params: DLemmaParams, x) -> Element:
    """The two-parameter degree-zero outer derivation of the algebra."""
    total = Element()
    for b, c in as_element(x).items():
        total = total + c * _dlemma_basis(params, b)
    return total


def dnatural_table(params: DNaturalParams, radius) -> CoproductTable:
    return CoproductTable.tabulate(lambda b: apply_dnatural(params, b), radius)


def dlemma_table(params: DLemmaParams, radius) -> CoproductTable:
    return CoproductTable.tabulate(lambda b: apply_dlemma(params, b), radius, arity=1)


def delta_r_table(r: TensorElement, radius) -> CoproductTable:
    _require_even(r)
    return CoproductTable.tabulate(lambda b: adjoint_act(b, r), radius)


def inner_table(u: LinComb, radius) -> CoproductTable:
    pu = u.parity()
    return CoproductTable.tabulate(lambda b: inner_derivation(u, b), radius,
                                   arity=u.arity, parity=pu or 0)


# ---------------------------------------------------------------------------
# Checks


def _as_window(window) -> Window:
    return window if isinstance(window, Window) else Window(window)


def _derivation_check(d: CoproductTable, window: Window, report: Report,
                      modulo: str | None) -> Report:
    pd = d.parity
    zero = zero_of_arity(d.arity)
    for x, y in iter_window_pairs(window):
        hit = bracket_monomial(x, y)
        lhs = d.image(hit[0]) * hit[1] if hit is not None else zero
        dx, dy = d.image(x), d.image(y)
        t1 = adjoint_act(x, dy)
        t2 = adjoint_act(y, dx)
        if pd & x.parity:
            t1 = -t1
        if y.parity & ((pd + x.parity) & 1):
            t2 = -t2
        rhs = t1 - t2
        if modulo is not None:
            lhs, rhs = reduce_mod(lhs, modulo), reduce_mod(rhs, modulo)
        report.check(f"pair ({x}, {y})", lhs, rhs)
    return report


def check_derivation(d: CoproductTable, window, modulo: str | None = None,
                     max_counterexamples: int = 10) -> Report:
    """``d([x,y]) = (-1)^{|d||x|} x*d(y) - (-1)^{|y|(|d|+|x|)} y*d(x)`` on window pairs.

    Every ordered pair with ``|deg x|, |deg y|, |deg x + deg y| <= gen_radius``
    is checked, including pairs whose bracket vanishes.
    """
    window = _as_window(window)
    report = Report("check-derivation", max_counterexamples=max_counterexamples)
    return _derivation_check(d, window, report, modulo)


def check_compatibility(delta: CoproductTable, window, modulo: str | None = MOD_C_TENSOR,
                        max_counterexamples: int = 10) -> Report:
    """``Delta([x,y]) = x*Delta(y) - (-1)^{|x||y|} y*Delta(x)``, modulo ``C⊗`` by default.

    For an odd table the general signed derivation identity is used.
    """
    window = _as_window(window)
    report = Report("check-compatibility", max_counterexamples=max_counterexamples)
    return _derivation_check(delta, window, report, modulo)


def _one_tensor_delta(delta: CoproductTable, t: TensorElement) -> Tensor3:
    """``(1 (x) Delta)`` on a tensor square."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        if delta.parity & a.parity:
            c = -c
        for (u, v), k in delta.image(b).terms.items():
            key = (a, u, v)
            w = out.get(key, ZERO) + c * k
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return Tensor3._from_clean(out)


def co_jacobi(delta: CoproductTable, x) -> Tensor3:
    t = _one_tensor_delta(delta, delta(x))
    xi = super_cycle(t)
    return t + xi + super_cycle(xi)


def check_coalgebra(delta: CoproductTable, window, modulo: str | None = MOD_C_TENSOR,
                    max_counterexamples: int = 10) -> Report:
    """Anti-cocommutativity and co-Jacobi on every generator of the window.

    The table is first reduced modulo ``C⊗``.  Second-slot images needed by
    ``(1 (x) Delta) Delta`` must be present in the table.
    """
    window = _as_window(window)
    if delta.arity != 2:
        raise ValueError("a coproduct table maps into the tensor square")
    table = delta.reduced(modulo) if modulo is not None else delta
    report = Report("check-coalgebra", max_counterexamples=max_counterexamples)
    for x in window.generators():
        img = table.image(x)
        report.tick()
        if not is_antisymmetric(img):
            report.fail(f"anti-cocommutativity at {x}", -img, super_twist(img))
        report.check(f"co-Jacobi at {x}", Tensor3(), co_jacobi(table, x))
    return report


def check_bialgebra(delta: CoproductTable, window, max_counterexamples: int = 10) -> Report:
    """Coalgebra axioms plus compatibility, merged into one report."""
    report = Report("check-bialgebra", max_counterexamples=max_counterexamples)
    report.merge(check_coalgebra(delta, window, max_counterexamples=max_counterexamples))
    report.merge(check_compatibility(delta, window, max_counterexamples=max_counterexamples))
    return report


def lemma21_sides(r: TensorElement, x) -> tuple[Tensor3, Tensor3]:
    """Both sides of ``(1 + xi + xi^2)(1 (x) Delta_r) Delta_r (x) = x * c(r)``.

    The left side only uses ``delta_r`` and the super-cycle; the right side
    only uses ``cybe_c`` and the action on triples.
    """
    _require_even(r)
    if not is_antisymmetric(r):
        raise NotAntisymmetric("r must lie in Im(1 (x) 1 - tau)")
    first = delta_r(r, x)
    out: dict = {}
    cache: dict = {}
    for (a, b), c in first.terms.items():
        img = cache.get(b)
        if img is None:
            img = cache[b] = delta_r(r, b)
        for (u, v), k in img.terms.items():
            key = (a, u, v)
            out[key] = out.get(key, ZERO) + c * k
    t = Tensor3(out)
    xi = super_cycle(t)
    left = t + xi + super_cycle(xi)
    right = adjoint_act(x, cybe_c(r))
    return left, right


def verify_lemma21(r: TensorElement, x, max_counterexamples: int = 10) -> Report:
    report = Report("lemma21", max_counterexamples=max_counterexamples)
    left, right = lemma21_sides(r, x)
    report.check(f"x = {as_element(x)}", right, left)
    report.details["lhs_terms"] = len(left)
    report.details["rhs_terms"] = len(right)
    return report


def decompose_by_degree(d: CoproductTable, window=None) -> dict:
    """Split a table into degree-homogeneous pieces keyed by degree shift.

    Only generators with ``|deg| <= gen_radius`` are kept when a window is
    given.  Every piece is defined on the same generators and the pieces sum
    back to the (restricted) table.
    """
    gens = d.generators()
    if window is not None:
        bound = _as_window(window).gen_radius.twice
        gens = [b for b in gens if abs(b.twice) <= bound]
    zero = zero_of_arity(d.arity)
    parts: dict[int, dict] = {}
    for b in gens:
        img = d.images[b]
        for key, c in img.terms.items():
            shift = HalfInt.of(img.key_degree(key) - b.degree)
            parts.setdefault(shift.twice, {}).setdefault(b, {})[key] = c
    out = {}
    for twice in sorted(parts):
        images = {b: type(zero)(parts[twice].get(b, {})) for b in gens}
        out[HalfInt(twice)] = CoproductTable(images, d.arity, d.parity)
    return out


def sum_tables(tables, like: CoproductTable) -> CoproductTable:
    total = CoproductTable({b: zero_of_arity(like.arity) for b in like.generators()},
                           like.arity, like.parity)
    for t in tables:
        total = total + t
    return total


__all__ = [
    "CoproductTable", "DLemmaParams", "DNaturalParams", "MissingImage", "NotAntisymmetric",
    "OddCoboundary", "apply_dlemma", "apply_dnatural", "check_bialgebra", "check_coalgebra",
    "check_compatibility", "check_derivation", "co_jacobi", "decompose_by_degree", "delta_r",
    "delta_r_table", "dlemma_table", "dnatural_table", "inner_derivation", "inner_table",
    "lemma21_sides", "sum_tables", "verify_lemma21",
]
