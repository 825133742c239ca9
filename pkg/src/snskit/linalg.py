"""Exact sparse linear algebra over the rationals.

Rows are dicts ``column index -> coefficient``.  Elimination runs on integer
rows (content-normalised) and only the final reduced row-echelon form is
converted to :class:`fractions.Fraction`.  Before elimination, forced-zero
columns and duplicate rows are stripped; the remaining rows are inserted
shortest first (stable) and each is reduced on its leftmost column, so the
result depends only on the input.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence


class LabelMismatch(ValueError):
    """A vector or subspace refers to coordinates outside the ambient labels."""


def _to_int_row(row: dict) -> dict[int, int]:
    """Scale a rational row to a primitive integer row (same span)."""
    den = 1
    for c in row.values():
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    out = {}
    g = 0
    for j, c in row.items():
        if c:
            v = c.numerator * (den // c.denominator)
            out[j] = v
            g = gcd(g, v)
    if g > 1:
        for j in out:
            out[j] //= g
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


class Echelon:
    """Incrementally built row-echelon form over Z (rows are primitive).

    ``pivots`` maps the leading column of each stored row to that row.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        """Reduce an integer row against the stored pivots (leading terms only)."""
        pivots = self.pivots
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                return row
            a = row[c]
            b = p[c]
            g = gcd(a, b)
            fa = b // g
            fb = a // g
            new = {j: v * fa for j, v in row.items()} if fa != 1 else dict(row)
            for j, v in p.items():
                w = new.get(j, 0) - fb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new)
        return row

    def add_row(self, row: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(_to_int_row(row))
        if not r:
            return False
        c = min(r)
        if r[c] < 0:
            r = {j: -v for j, v in r.items()}
        self.pivots[c] = r
        return True

    def add_rows(self, rows: Iterable[dict]) -> None:
        for row in rows:
            self.add_row(row)

    def rref_rows(self, min_col: int = 0) -> list[dict[int, Fraction]]:
        """Fully reduced rows (leading 1) for the pivots with column >= min_col."""
        cols = sorted(c for c in self.pivots if c >= min_col)
        reduced: dict[int, dict[int, Fraction]] = {}
        for c in reversed(cols):
            row = self.pivots[c]
            lead = row[c]
            frow = {j: Fraction(v, lead) for j, v in row.items()}
            # eliminate later pivot columns using already-reduced rows
            for pc in sorted(j for j in row if j != c and j in reduced):
                f = frow.get(pc)
                if not f:
                    continue
                for j, v in reduced[pc].items():
                    w = frow.get(j, 0) - f * v
                    if w:
                        frow[j] = w
                    else:
                        frow.pop(j, None)
            reduced[c] = frow
        return [reduced[c] for c in cols]


def rref(rows: Iterable[dict], ncols: int) -> list[dict[int, Fraction]]:
    ech = Echelon(ncols)
    ech.add_rows(rows)
    return ech.rref_rows()


def kernel_from_rref(rows: Sequence[dict[int, Fraction]], ncols: int,
                     cols: Sequence[int] | None = None) -> list[dict[int, Fraction]]:
    """Kernel basis of an RREF system, one vector per free column."""
    cols = range(ncols) if cols is None else cols
    pivot_rows = {min(r): r for r in rows}
    basis = []
    for f in cols:
        if f in pivot_rows:
            continue
        vec = {f: Fraction(1)}
        for pc, r in pivot_rows.items():
            v = r.get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


class SubspaceBasis:
    """A subspace of the coordinate space on ``labels``, stored in RREF.

    ``rows`` are sparse dicts keyed by coordinate index; each has leading
    coefficient 1 and zeros in every other row's pivot column.
    """

    def __init__(self, labels: Sequence[Hashable], rows: Iterable[dict] = ()):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("labels must be unique")
        self.rows = rref(rows, len(self.labels))

    @classmethod
    def _from_rref(cls, labels, rows):
        obj = cls.__new__(cls)
        obj.labels = tuple(labels)
        obj._index = {lab: i for i, lab in enumerate(obj.labels)}
        obj.rows = list(rows)
        return obj

    @classmethod
    def span(cls, labels: Sequence[Hashable], vectors: Iterable) -> "SubspaceBasis":
        """Span of vectors given as dicts ``label -> coef`` or dense sequences."""
        obj = cls._from_rref(labels, [])
        rows = [obj._coords(v) for v in vectors]
        obj.rows = rref(rows, len(obj.labels))
        return obj

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return self.dim

    def pivot_columns(self) -> list[int]:
        return [min(r) for r in self.rows]

    def _coords(self, vector) -> dict[int, Fraction]:
        if isinstance(vector, dict):
            out = {}
            for lab, c in vector.items():
                if lab not in self._index:
                    raise LabelMismatch(f"label {lab!r} is not an ambient coordinate")
                if c:
                    out[self._index[lab]] = Fraction(c)
            return out
        vector = list(vector)
        if len(vector) != len(self.labels):
            raise LabelMismatch(f"vector has {len(vector)} entries, expected {len(self.labels)}")
        return {i: Fraction(c) for i, c in enumerate(vector) if c}

    def vectors(self) -> list[dict]:
        """Basis vectors as dicts ``label -> coef``."""
        return [{self.labels[i]: c for i, c in sorted(r.items())} for r in self.rows]

    def dense(self) -> list[list[Fraction]]:
        n = len(self.labels)
        out = []
        for r in self.rows:
            v = [Fraction(0)] * n
            for i, c in r.items():
                v[i] = c
            out.append(v)
        return out

    def contains(self, vector) -> bool:
        residue = self._coords(vector)
        for r in self.rows:
            if not residue:
                break
            c = min(r)
            f = residue.get(c)
            if not f:
                continue
            for j, v in r.items():
                w = residue.get(j, 0) - f * v
                if w:
                    residue[j] = w
                else:
                    residue.pop(j, None)
        return not residue

    def _check_labels(self, other: "SubspaceBasis") -> None:
        if other.labels != self.labels:
            raise LabelMismatch("subspaces live on different coordinate labels")

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check_labels(other)
        return SubspaceBasis._from_rref(self.labels, rref(self.rows + other.rows,
                                                          len(self.labels)))

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        self._check_labels(other)
        return all(self.contains({self.labels[i]: c for i, c in r.items()})
                   for r in other.rows)

    def restrict(self, labels: Sequence[Hashable]) -> "SubspaceBasis":
        """Image under the coordinate projection onto ``labels``."""
        sub = SubspaceBasis._from_rref(labels, [])
        rows = []
        for r in self.rows:
            v = {}
            for i, c in r.items():
                lab = self.labels[i]
                j = sub._index.get(lab)
                if j is not None:
                    v[j] = c
            rows.append(v)
        sub.rows = rref(rows, len(sub.labels))
        return sub

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.labels == other.labels and self.rows == other.rows

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={len(self.labels)})"


def subspace_contains(space: SubspaceBasis, vector) -> bool:
    return space.contains(vector)


def _presolve(rows: Iterable[dict]) -> tuple[list[int], list[dict[int, int]]]:
    """Strip forced-zero columns and duplicate rows before elimination.

    A row with a single entry forces its column to vanish; that column is then
    dropped from every other row, which can expose further singletons.  The
    returned rows have the same span modulo the unit vectors of ``zeros``.
    """
    pending = [_to_int_row(r) for r in rows]
    zeros: set[int] = set()
    while True:
        found = {next(iter(r)) for r in pending if len(r) == 1}
        if not found:
            break
        zeros |= found
        pending = [{j: v for j, v in r.items() if j not in found} for r in pending]
        pending = [r for r in pending if r]
    seen = set()
    rest = []
    for r in pending:
        r = _primitive(r)
        if r[min(r)] < 0:
            r = {j: -v for j, v in r.items()}
        key = tuple(sorted(r.items()))
        if key not in seen:
            seen.add(key)
            rest.append(r)
    return sorted(zeros), rest


class LinearSystem:
    """Homogeneous linear system ``A x = 0`` with labelled columns and tagged rows."""

    def __init__(self, columns: Sequence[Hashable]):
        self.columns = tuple(columns)
        self.column_index = {lab: i for i, lab in enumerate(self.columns)}
        if len(self.column_index) != len(self.columns):
            raise ValueError("column labels must be unique")
        self.rows: list[dict[int, Fraction]] = []
        self.tags: list = []

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence], columns=None) -> "LinearSystem":
        ncols = len(matrix[0]) if matrix else 0
        system = cls(columns if columns is not None else range(ncols))
        for i, row in enumerate(matrix):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            system.add_row({system.columns[j]: c for j, c in enumerate(row) if c}, tag=i)
        return system

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def add_row(self, coefs: dict, tag=None) -> None:
        """Add a row given as ``column label -> coef``; zero rows are kept out."""
        row = {}
        for lab, c in coefs.items():
            j = self.column_index.get(lab)
            if j is None:
                raise LabelMismatch(f"unknown column {lab!r}")
            if c:
                row[j] = Fraction(c)
        if row:
            self.rows.append(row)
            self.tags.append(tag)

    def add_index_row(self, row: dict[int, Fraction], tag=None) -> None:
        if row:
            self.rows.append(row)
            self.tags.append(tag)

    def residual(self, vector: dict) -> list:
        """Tags of the rows violated by ``vector`` (``label -> coef``)."""
        x = {self.column_index[lab]: Fraction(c) for lab, c in vector.items()
             if lab in self.column_index and c}
        missing = [lab for lab in vector if lab not in self.column_index and vector[lab]]
        if missing:
            raise LabelMismatch(f"vector has coordinates outside the system: {missing[:3]}")
        bad = []
        for row, tag in zip(self.rows, self.tags):
            if sum(c * x.get(j, 0) for j, c in row.items()):
                bad.append(tag)
        return bad

    def satisfies(self, vector: dict) -> bool:
        return not self.residual(vector)

    def echelon(self, column_order: Sequence[int] | None = None) -> Echelon:
        rows = self.rows
        if column_order is not None:
            pos = {c: i for i, c in enumerate(column_order)}
            rows = [{pos[j]: v for j, v in row.items()} for row in rows]
        ech = Echelon(self.ncols)
        zeros, rest = _presolve(rows)
        for j in zeros:
            ech.pivots[j] = {j: 1}
        ech.add_rows(sorted(rest, key=len))
        return ech

    def rank(self) -> int:
        return self.echelon().rank

    def __repr__(self):
        return f"LinearSystem({len(self.rows)} rows x {self.ncols} columns)"


def exact_kernel(system: LinearSystem) -> SubspaceBasis:
    rows = system.echelon().rref_rows()
    vectors = kernel_from_rref(rows, system.ncols)
    return SubspaceBasis._from_rref(system.columns, rref(vectors, system.ncols))


def projected_kernel(system: LinearSystem, keep: Sequence[Hashable]) -> tuple[SubspaceBasis, int]:
    """Project the kernel of ``system`` onto the coordinates ``keep``.

    Columns outside ``keep`` are eliminated first; the rows whose leading
    column lies in ``keep`` then cut out exactly the projected kernel.  Returns
    the projection and the rank of the full system.
    """
    keep_idx = [system.column_index[lab] for lab in keep]
    keep_set = set(keep_idx)
    drop_idx = [j for j in range(system.ncols) if j not in keep_set]
    order = drop_idx + keep_idx
    ech = system.echelon(order)
    nd = len(drop_idx)
    rows = [{j - nd: v for j, v in r.items()} for r in ech.rref_rows(min_col=nd)]
    vectors = kernel_from_rref(rows, len(keep_idx))
    labels = [system.columns[j] for j in keep_idx]
    return SubspaceBasis._from_rref(labels, rref(vectors, len(labels))), ech.rank
