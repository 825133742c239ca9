"""Basis, gradings and bracket table of the twisted N=1 Schroedinger-Neveu-Schwarz
superalgebra.

The algebra has basis ``L_n`` (n integral), ``G_r`` (r half-odd) and ``Y_p``,
``M_p`` (p any half-integer).  Half-integers are stored doubled, so ``G[1/2]``
is ``BasisVector("G", 1)``.  All coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, NamedTuple

from .report import Report

Scalar = Fraction

FAMILIES = ("L", "G", "Y", "M")
FAMILY_RANK = {f: i for i, f in enumerate(FAMILIES)}

ZERO = Fraction(0)
ONE = Fraction(1)


class IndexDomain(ValueError):
    """Raised for an index outside the domain of its family (e.g. ``L[1/2]``)."""


class HalfInt:
    """An element of ``(1/2)Z`` held as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        if not isinstance(twice, int):
            raise TypeError(f"twice must be an int, got {type(twice).__name__}")
        self.twice = twice

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce an int, Fraction, HalfInt or string such as ``"-5/2"``."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __mul__(self, k: int):
        return HalfInt(self.twice * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.of(other).twice

    def __gt__(self, other):
        return self.twice > HalfInt.of(other).twice

    def __ge__(self, other):
        return self.twice >= HalfInt.of(other).twice

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


class BasisVector(NamedTuple):
    """One generator; ``twice`` is twice the index."""

    family: str
    twice: int

    @property
    def index(self) -> HalfInt:
        return HalfInt(self.twice)

    @property
    def degree(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def parity(self) -> int:
        if self.family == "L":
            return 0
        if self.family == "G":
            return 1
        return self.twice & 1

    def sort_key(self):
        return (FAMILY_RANK[self.family], self.twice)

    def __str__(self):
        return f"{self.family}[{self.index}]"

    def __repr__(self):
        return str(self)


def make_basis(family: str, index) -> BasisVector:
    if family not in FAMILY_RANK:
        raise ValueError(f"unknown family {family!r}; expected one of L, G, Y, M")
    twice = HalfInt.of(index).twice
    if family == "L" and twice % 2:
        raise IndexDomain("L index must be an integer")
    if family == "G" and twice % 2 == 0:
        raise IndexDomain("G index must be a half-odd integer")
    return BasisVector(family, twice)


def L(n) -> BasisVector:
    return make_basis("L", n)


def G(r) -> BasisVector:
    return make_basis("G", r)


def Y(p) -> BasisVector:
    return make_basis("Y", p)


def M(p) -> BasisVector:
    return make_basis("M", p)


def basis_in_window(radius) -> list[BasisVector]:
    """All basis vectors with ``|degree| <= radius``, in canonical order."""
    bound = HalfInt.of(radius).twice
    out = []
    for fam in FAMILIES:
        for t in range(-bound, bound + 1):
            if fam == "L" and t % 2:
                continue
            if fam == "G" and t % 2 == 0:
                continue
            out.append(BasisVector(fam, t))
    return out


def sign(k: int) -> int:
    return -1 if k & 1 else 1


class Window:
    """Finite truncation of the grading.

    ``gen_radius`` bounds the generators that are tested; ``comp_radius``
    bounds the degree of each tensor component that is represented.
    """

    __slots__ = ("gen_radius", "comp_radius")

    def __init__(self, gen_radius, comp_radius=None):
        gen = HalfInt.of(gen_radius)
        comp = HalfInt.of(comp_radius) if comp_radius is not None else gen * 2
        if gen.twice < 0:
            raise ValueError("gen_radius must be non-negative")
        if comp < gen:
            raise ValueError("comp_radius must be at least gen_radius")
        self.gen_radius = gen
        self.comp_radius = comp

    def generators(self) -> list[BasisVector]:
        return basis_in_window(self.gen_radius)

    def __eq__(self, other):
        return (isinstance(other, Window) and self.gen_radius == other.gen_radius
                and self.comp_radius == other.comp_radius)

    def __hash__(self):
        return hash((self.gen_radius.twice, self.comp_radius.twice))

    def __repr__(self):
        return f"Window(gen_radius={self.gen_radius}, comp_radius={self.comp_radius})"


# ---------------------------------------------------------------------------
# Linear combinations


class LinComb:
    """Sparse exact linear combination over hashable keys.

    Subclasses fix the key type and the canonical order.  Instances are
    treated as immutable; all operations return new objects.
    """

    __slots__ = ("_terms",)
    arity = 0

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coef in items:
                key = self._check_key(key)
                c = out.get(key, ZERO) + Fraction(coef)
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        self._terms = out

    @classmethod
    def _from_clean(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @staticmethod
    def _check_key(key):
        return key

    @staticmethod
    def _key_order(key):
        return key

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: self._key_order(kv[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, ZERO)

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _combine(self, other, k):
        if type(other) is not type(self):
            if isinstance(other, int) and other == 0:
                return self
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, ZERO) + k * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return self._from_clean(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return self._from_clean({})
        return self._from_clean({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is type(self):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def map_terms(self, fn) -> "LinComb":
        """Apply ``fn(key, coef) -> iterable of (key, coef)`` termwise."""
        out = {}
        for key, c in self._terms.items():
            for k2, c2 in fn(key, c):
                v = out.get(k2, ZERO) + c2
                if v:
                    out[k2] = v
                else:
                    out.pop(k2, None)
        return self._from_clean(out)

    def filter(self, pred) -> "LinComb":
        return self._from_clean({k: c for k, c in self._terms.items() if pred(k)})

    def key_degree(self, key) -> Fraction:
        raise NotImplementedError

    def key_parity(self, key) -> int:
        raise NotImplementedError

    def degrees(self) -> set:
        return {self.key_degree(k) for k in self._terms}

    def parities(self) -> set:
        return {self.key_parity(k) for k in self._terms}

    def degree(self):
        """The common degree of all terms, or ``None`` if not homogeneous."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def parity(self):
        ps = self.parities()
        return ps.pop() if len(ps) == 1 else None

    def is_degree_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_parity_homogeneous(self) -> bool:
        return len(self.parities()) <= 1

    def parity_parts(self) -> dict:
        """Split into parity-homogeneous parts, keyed by parity."""
        parts: dict = {}
        for key, c in self._terms.items():
            parts.setdefault(self.key_parity(key), {})[key] = c
        return {p: self._from_clean(t) for p, t in sorted(parts.items())}

    def __repr__(self):
        from .dsl import format_any
        return f"{type(self).__name__}({format_any(self)!r})"

    def __str__(self):
        from .dsl import format_any
        return format_any(self)


class Element(LinComb):
    """A finite linear combination of basis vectors."""

    __slots__ = ()
    arity = 1

    @staticmethod
    def _check_key(key):
        if not isinstance(key, BasisVector):
            raise TypeError(f"Element keys must be BasisVector, got {key!r}")
        return key

    @staticmethod
    def _key_order(key):
        return (FAMILY_RANK[key.family], key.twice)

    @staticmethod
    def key_degree(key):
        return key.degree

    @staticmethod
    def key_parity(key):
        return key.parity

    @classmethod
    def basis(cls, b: BasisVector, coef=1) -> "Element":
        return cls({b: coef})


def as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, BasisVector):
        return Element({x: 1})
    if isinstance(x, int) and x == 0:
        return Element()
    raise TypeError(f"cannot interpret {x!r} as an Element")


# ---------------------------------------------------------------------------
# Bracket table


def _table(a: BasisVector, b: BasisVector):
    """The listed brackets, in the order they are listed; None if unlisted."""
    fa, fb = a.family, b.family
    n = Fraction(a.twice, 2)
    m = Fraction(b.twice, 2)
    t = a.twice + b.twice
    b_int = b.twice % 2 == 0
    if fa == "L":
        if fb == "L":
            return "L", t, m - n
        if fb == "G":
            return "G", t, m - n / 2
        if fb == "Y":
            return "Y", t, (m - n / 2) if b_int else m
        if fb == "M":
            return "M", t, m if b_int else m + n / 2
        return None
    if fa == "G":
        if fb == "G":
            return "L", t, Fraction(2)
        # the table writes [G_r, Y_p] with r = a, p = b
        if fb == "Y":
            return "Y", t, (m - n) / 2 if b_int else Fraction(2)
        if fb == "M":
            return "M", t, m / 2 if b_int else Fraction(2)
        return None
    if fa == "Y" and fb == "Y":
        a_int = a.twice % 2 == 0
        if a_int and b_int:
            return "M", t, (m - n) / 2
        if a_int and not b_int:
            return "M", t, m / 2
        if not a_int and not b_int:
            return "M", t, Fraction(2)
    return None


@lru_cache(maxsize=None)
def _bracket_pair(a: BasisVector, b: BasisVector):
    """``(basis, coef)`` or ``None``; the bracket of two basis vectors is a monomial."""
    hit = _table(a, b)
    if hit is not None:
        fam, t, c = hit
        return (BasisVector(fam, t), c) if c else None
    hit = _table(b, a)
    if hit is not None:
        fam, t, c = hit
        if not c:
            return None
        # [a, b] = -(-1)^{|a||b|} [b, a]
        if a.parity & b.parity:
            return BasisVector(fam, t), -(-c)
        return BasisVector(fam, t), -c
    return None


def bracket_monomial(a: BasisVector, b: BasisVector):
    """Fast path used by the engines: ``(basis, coef)`` or ``None``."""
    return _bracket_pair(a, b)


def bracket_basis(a: BasisVector, b: BasisVector) -> Element:
    hit = _bracket_pair(a, b)
    if hit is None:
        return Element()
    return Element._from_clean({hit[0]: hit[1]})


def bracket(x, y, bracket_fn: Callable | None = None) -> Element:
    """Bilinear extension of the basis bracket."""
    x = as_element(x)
    y = as_element(y)
    out: dict = {}
    if bracket_fn is None:
        for a, ca in x._terms.items():
            for b, cb in y._terms.items():
                hit = _bracket_pair(a, b)
                if hit is None:
                    continue
                key, c = hit
                v = out.get(key, ZERO) + ca * cb * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Element._from_clean(out)
    total = Element()
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            total = total + (ca * cb) * bracket_fn(a, b)
    return total


# ---------------------------------------------------------------------------
# Checks


def verify_superalgebra(window, max_counterexamples: int = 10,
                        bracket_fn: Callable | None = None) -> Report:
    """Exhaustive check of the superalgebra axioms over a window.

    Checks super skew-symmetry, degree and parity additivity on every ordered
    pair and the graded Jacobi identity on every ordered triple of basis
    vectors with ``|degree| <= gen_radius``.  ``bracket_fn`` replaces the
    built-in table (used to exercise failure reporting).
    """
    if not isinstance(window, Window):
        window = Window(window)
    basis = window.generators()
    report = Report("verify-algebra", max_counterexamples=max_counterexamples)

    if bracket_fn is None:
        def mono(a, b):
            return _bracket_pair(a, b)
    else:
        mono_cache: dict = {}

        def mono(a, b):
            key = (a, b)
            if key not in mono_cache:
                e = bracket_fn(a, b)
                if len(e) > 1:
                    raise ValueError(f"bracket of {a} and {b} is not a monomial")
                mono_cache[key] = next(iter(e.items())) if e else None
            return mono_cache[key]

    for a, b in product(basis, repeat=2):
        ab = mono(a, b)
        ba = mono(b, a)
        s = -sign(a.parity * b.parity)
        expected = None if ab is None else (ab[0], s * ab[1])
        report.tick()
        if expected != ba:
            report.fail(f"skew-symmetry [{b},{a}] vs [{a},{b}]",
                        _fmt_mono(expected), _fmt_mono(ba))
        if ab is not None:
            key = ab[0]
            report.tick()
            if key.degree != a.degree + b.degree:
                report.fail(f"degree of [{a},{b}]", str(a.degree + b.degree), str(key.degree))
            report.tick()
            if key.parity != (a.parity + b.parity) % 2:
                report.fail(f"parity of [{a},{b}]", str((a.parity + b.parity) % 2),
                            str(key.parity))

    for x, y, z in product(basis, repeat=3):
        px, py, pz = x.parity, y.parity, z.parity
        acc: dict = {}
        for s, u, v, w in ((sign(px * pz), x, y, z),
                           (sign(py * px), y, z, x),
                           (sign(pz * py), z, x, y)):
            vw = mono(v, w)
            if vw is None:
                continue
            outer = mono(u, vw[0])
            if outer is None:
                continue
            key, c = outer
            acc[key] = acc.get(key, ZERO) + s * vw[1] * c
        report.tick()
        residue = {k: c for k, c in acc.items() if c}
        if residue:
            report.fail(f"graded Jacobi ({x}, {y}, {z})", "0",
                        str(Element._from_clean(residue)))
    return report


def _fmt_mono(m):
    if m is None:
        return "0"
    return str(Element._from_clean({m[0]: m[1]}))


def subalgebra_membership(b: BasisVector, part: str) -> bool:
    if part == "ns":
        return b.family in ("L", "G")
    if part == "ideal":
        return b.family in ("Y", "M")
    if part == "tsv":
        return b.parity == 0
    if part == "center":
        return b == BasisVector("M", 0)
    if part == "cartan":
        return b in (BasisVector("L", 0), BasisVector("M", 0))
    raise ValueError(f"unknown part {part!r}; expected ns, ideal, tsv, center or cartan")


def iter_window_pairs(window: Window) -> Iterator[tuple[BasisVector, BasisVector]]:
    """Ordered pairs (x, y) with |deg x|, |deg y|, |deg x + deg y| <= gen_radius."""
    basis = window.generators()
    bound = window.gen_radius.twice
    for x in basis:
        for y in basis:
            if abs(x.twice + y.twice) <= bound:
                yield x, y


def linear_extend(fn: Callable[[BasisVector], LinComb], x, zero: LinComb) -> LinComb:
    """Extend ``fn`` from basis vectors to an Element."""
    total = zero
    for b, c in as_element(x).items():
        total = total + c * fn(b)
    return total


__all__ = [
    "BasisVector", "Element", "FAMILIES", "G", "HalfInt", "IndexDomain", "L",
    "LinComb", "M", "Scalar", "Window", "Y", "as_element", "basis_in_window",
    "bracket", "bracket_basis", "bracket_monomial", "iter_window_pairs",
    "linear_extend", "make_basis", "sign", "subalgebra_membership",
    "verify_superalgebra",
]

