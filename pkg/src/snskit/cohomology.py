"""Windowed solver for homogeneous derivations and their classes modulo inner ones.

For a fixed degree ``p`` and parity, the unknowns are the coefficients of
``d(g)`` for every generator ``g`` with ``|deg g| <= gen_radius``, over image
monomials of degree ``deg g + p`` whose components satisfy
``|deg| <= comp_radius``.  One row is written per ordered window pair
``(x, y)`` and per monomial of the derivation identity; monomials that fall
outside the component box are monitored as well, so a truncated image cannot
satisfy the identity by leaking terms out of the window.

Boundary generators are under-constrained, so solution spaces are compared
after projecting onto the interior generators (``|deg g| <= gen_radius / 2``).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BasisVector, HalfInt, Window, basis_in_window, bracket_monomial, iter_window_pairs
from .bialgebra import DLemmaParams, DNaturalParams, apply_dlemma, apply_dnatural
from .linalg import LinearSystem, SubspaceBasis, exact_kernel, projected_kernel
from .tensors import FAMILY_RANK, WindowTooSmall, act_on_key, key_weight, keys_of_degree

log = logging.getLogger(__name__)

TARGETS = ("self", "tensor")


def _key_order(key):
    return tuple((FAMILY_RANK[b.family], b.twice) for b in key)


def _parse_parity(parity) -> int:
    if parity in (0, 1):
        return int(parity)
    if parity in ("even", "0"):
        return 0
    if parity in ("odd", "1"):
        return 1
    raise ValueError(f"parity must be even/odd or 0/1, got {parity!r}")


def _arity(target: str) -> int:
    if target not in TARGETS:
        raise ValueError(f"target must be 'self' or 'tensor', got {target!r}")
    return 1 if target == "self" else 2


def _as_key(img_key, arity):
    return (img_key,) if arity == 1 else img_key


class DerivationSystem(LinearSystem):
    """The constraint system plus the bookkeeping needed to read it back."""

    def __init__(self, columns, degree: HalfInt, parity: int, window: Window, target: str,
                 generators: list[BasisVector], image_keys: dict):
        super().__init__(columns)
        self.degree = degree
        self.parity = parity
        self.window = window
        self.target = target
        self.arity = _arity(target)
        self.generators = generators
        self.image_keys = image_keys

    def interior_generators(self) -> list[BasisVector]:
        bound = self.window.gen_radius.twice
        return [g for g in self.generators if 2 * abs(g.twice) <= bound]

    def interior_columns(self) -> list:
        inner = set(self.interior_generators())
        return [c for c in self.columns if c[0] in inner]

    def column_shift(self, j: int) -> int:
        g, key = self.columns[j]
        return key_weight(key) - key_weight(g)

    def blocks(self) -> dict[int, LinearSystem]:
        """Split into independent subsystems by weight shift.

        The bracket is additive in :func:`key_weight`, so each row only touches
        columns ``(g, k)`` with one value of ``weight(k) - weight(g)``.
        """
        by_shift: dict[int, list] = {}
        for j in range(self.ncols):
            by_shift.setdefault(self.column_shift(j), []).append(j)
        out = {}
        local = {}
        for w, idx in sorted(by_shift.items()):
            sub = LinearSystem([self.columns[j] for j in idx])
            out[w] = sub
            for i, j in enumerate(idx):
                local[j] = (w, i)
        for row, tag in zip(self.rows, self.tags):
            shifts = {local[j][0] for j in row}
            if len(shifts) != 1:
                raise AssertionError(f"row {tag} mixes weight shifts {sorted(shifts)}")
            w = shifts.pop()
            out[w].add_index_row({local[j][1]: v for j, v in row.items()}, tag=tag)
        return out

    def tabulate(self, fn, generators=None) -> dict:
        """Coordinates of a map ``fn(g)`` (an Element or TensorElement) on the columns.

        Raises ``WindowTooSmall`` if an image term has no column.
        """
        gens = self.generators if generators is None else generators
        vec = {}
        for g in gens:
            for key, c in fn(g).terms.items():
                lab = (g, _as_key(key, self.arity))
                if lab not in self.column_index:
                    raise WindowTooSmall(f"image term {lab} of the tabulated map is not "
                                         f"representable in {self.window}")
                vec[lab] = c
        return vec


def build_derivation_system(degree, parity, window: Window, target: str = "tensor"
                            ) -> DerivationSystem:
    degree = HalfInt.of(degree)
    parity = _parse_parity(parity)
    arity = _arity(target)
    if not isinstance(window, Window):
        window = Window(window)
    R = window.gen_radius.twice
    C = window.comp_radius.twice
    if C < 2 * R + abs(degree.twice):
        raise WindowTooSmall(f"comp_radius must be at least 2*gen_radius + |degree| "
                             f"= {HalfInt(2 * R + abs(degree.twice))}")
    gens = basis_in_window(window.gen_radius)
    image_keys = {}
    columns = []
    for g in gens:
        keys = keys_of_degree(g.twice + degree.twice, (g.parity + parity) & 1, arity, C)
        image_keys[g] = keys
        columns.extend((g, k) for k in keys)
    system = DerivationSystem(columns, degree, parity, window, target, gens, image_keys)
    col = system.column_index

    order = {g: i for i, g in enumerate(gens)}
    for x, y in iter_window_pairs(window):
        # the identity for (y, x) is a signed copy of the one for (x, y)
        if order[y] < order[x]:
            continue
        s1 = -1 if parity & x.parity else 1
        s2 = -1 if y.parity & ((parity + x.parity) & 1) else 1
        eqs: dict = {}

        def put(out_key, j, c):
            row = eqs.setdefault(out_key, {})
            v = row.get(j, 0) + c
            if v:
                row[j] = v
            else:
                row.pop(j, None)

        hit = bracket_monomial(x, y)
        if hit is not None:
            z, cz = hit
            for k in image_keys[z]:
                put(k, col[(z, k)], cz)
        # - s1 * x * d(y)
        for k in image_keys[y]:
            j = col[(y, k)]
            for k2, c in act_on_key(x, k):
                put(k2, j, -s1 * c)
        # + s2 * y * d(x)
        for k in image_keys[x]:
            j = col[(x, k)]
            for k2, c in act_on_key(y, k):
                put(k2, j, s2 * c)
        for out_key, row in eqs.items():
            if row:
                system.add_index_row({j: Fraction(v) for j, v in row.items()},
                                     tag=(x, y, out_key))
    return system


def representable_inner_space(degree, parity, window: Window, target: str) -> list:
    """Basis of the ``u`` whose inner derivations fit the window.

    ``u`` has degree ``degree`` and the given parity, components bounded by
    ``comp_radius``, and every ``g * u`` (g a window generator) must keep all
    components inside the same bound.
    """
    degree = HalfInt.of(degree)
    parity = _parse_parity(parity)
    arity = _arity(target)
    C = window.comp_radius.twice
    keys = keys_of_degree(degree.twice, parity, arity, C)
    if not keys:
        return []
    system = LinearSystem(keys)
    for g in window.generators():
        leaks: dict = {}
        for j, k in enumerate(keys):
            for k2, c in act_on_key(g, k):
                if any(abs(b.twice) > C for b in k2):
                    leaks.setdefault(k2, {})[j] = c
        for k2 in sorted(leaks, key=_key_order):
            system.add_index_row(leaks[k2], tag=(g, k2))
    space = exact_kernel(system)
    out = []
    for vec in space.vectors():
        out.append({(k[0] if arity == 1 else k): c for k, c in vec.items()})
    return out


def inner_tabulation(system: DerivationSystem, u: dict, generators=None) -> dict:
    """Column coordinates of ``g -> (-1)^{|u||g|} g * u``."""
    arity = system.arity
    pu = system.parity
    gens = system.generators if generators is None else generators
    vec: dict = {}
    for g in gens:
        s = -1 if pu & g.parity else 1
        for key, cu in u.items():
            for k2, c in act_on_key(g, _as_key(key, arity)):
                lab = (g, k2)
                if lab not in system.column_index:
                    raise WindowTooSmall(f"inner image {lab} is not representable")
                v = vec.get(lab, 0) + s * cu * c
                if v:
                    vec[lab] = v
                else:
                    vec.pop(lab, None)
    return vec


def family_maps(target: str) -> list:
    """Unit-parameter members of the degree-zero outer family for the target."""
    if target == "tensor":
        units = [DNaturalParams.of(v) for v in ((1, 0, 0, 0), (0, 1, 0, 0),
                                                (0, 0, 1, 0), (0, 0, 0, 1))]
        return [lambda b, p=p: apply_dnatural(p, b) for p in units]
    units = [DLemmaParams(Fraction(1), Fraction(0)), DLemmaParams(Fraction(0), Fraction(1))]
    return [lambda b, p=p: apply_dlemma(p, b) for p in units]


@dataclass
class H1Report:
    degree: HalfInt
    parity: int
    window: Window
    target: str
    solution: SubspaceBasis
    inner: SubspaceBasis
    dnatural_span: SubspaceBasis
    quotient_dim_interior: int
    quotient_dim_without_family: int
    solution_contained: bool
    solution_contained_without_family: bool
    inner_in_solution: bool
    family_in_solution: bool
    ncols: int
    nrows: int
    rank: int
    details: dict = field(default_factory=dict)

    @property
    def nullity(self) -> int:
        return self.ncols - self.rank

    @property
    def passed(self) -> bool:
        return self.solution_contained and self.inner_in_solution and self.family_in_solution

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def dimensions(self) -> dict:
        return {
            "columns": self.ncols,
            "rows": self.nrows,
            "rank": self.rank,
            "nullity": self.nullity,
            "solution_interior": self.solution.dim,
            "inner_interior": self.inner.dim,
            "family_interior": self.dnatural_span.dim,
            "quotient_interior": self.quotient_dim_interior,
            "quotient_interior_without_family": self.quotient_dim_without_family,
        }

    def summary(self) -> str:
        p = "even" if self.parity == 0 else "odd"
        lines = [
            f"h1: degree {self.degree}, {p}, target {self.target}, {self.window}",
            f"  system: {self.nrows} rows x {self.ncols} columns, rank {self.rank}, "
            f"nullity {self.nullity}",
            f"  interior: solution {self.solution.dim}, inner {self.inner.dim}, "
            f"family {self.dnatural_span.dim}",
            f"  quotient dimension (without family): {self.quotient_dim_without_family}",
            f"  quotient dimension (with family): {self.quotient_dim_interior}",
            f"  solution inside inner + family: {self.solution_contained}",
        ]
        extra = self.details.get("quotient_by_weight_shift")
        if extra:
            parts = ", ".join(f"shift {w}: {n}" for w, n in extra.items())
            lines.append(f"  outside inner + family by weight shift: {parts}")
        return "\n".join(lines)


def _quotient_dim(space: SubspaceBasis, sub: SubspaceBasis) -> int:
    return (space + sub).dim - sub.dim


def solve_h1_window(degree, parity, window: Window, target: str = "tensor") -> H1Report:
    """Compare windowed derivations against inner ones plus the degree-zero family.

    The family (the four-parameter tensor family, or the two-parameter family
    for ``target='self'``) is only included at degree 0 and even parity.
    """
    if not isinstance(window, Window):
        window = Window(window)
    degree = HalfInt.of(degree)
    parity = _parse_parity(parity)
    system = build_derivation_system(degree, parity, window, target)
    log.info("assembled %r", system)
    interior_gens = system.interior_generators()
    keep = system.interior_columns()
    keep_set = set(keep)
    vectors = []
    rank = 0
    for w, block in system.blocks().items():
        block_keep = [c for c in block.columns if c in keep_set]
        part, r = projected_kernel(block, block_keep)
        log.info("weight shift %d: %r, rank %d, interior kernel %d", w, block, r, part.dim)
        rank += r
        vectors.extend(part.vectors())
    solution = SubspaceBasis.span(keep, vectors)
    log.info("rank %d, interior solution dim %d", rank, solution.dim)

    inner_vecs = [inner_tabulation(system, u, interior_gens)
                  for u in representable_inner_space(degree, parity, window, target)]
    inner = SubspaceBasis.span(keep, inner_vecs)
    if degree.twice == 0 and parity == 0:
        fam_vecs = [system.tabulate(fn, interior_gens) for fn in family_maps(target)]
    else:
        fam_vecs = []
    family = SubspaceBasis.span(keep, fam_vecs)
    both = inner + family

    def shift_of(vec):
        (g, key), _ = next(iter(vec.items()))
        return key_weight(key) - key_weight(g)

    per_shift: dict[int, list[int]] = {}
    for space, slot in ((solution, 0), (both, 1)):
        for vec in space.vectors():
            per_shift.setdefault(shift_of(vec), [0, 0])[slot] += 1
    details = {"quotient_by_weight_shift": {w: a - b for w, (a, b) in sorted(per_shift.items())
                                            if a != b}}

    return H1Report(
        degree=degree, parity=parity, window=window, target=target,
        solution=solution, inner=inner, dnatural_span=family,
        quotient_dim_interior=_quotient_dim(solution, both),
        quotient_dim_without_family=_quotient_dim(solution, inner),
        solution_contained=both.contains_subspace(solution),
        solution_contained_without_family=inner.contains_subspace(solution),
        inner_in_solution=solution.contains_subspace(inner),
        family_in_solution=solution.contains_subspace(family),
        ncols=system.ncols, nrows=len(system.rows), rank=rank, details=details,
    )
