"""Exact scalar arithmetic and dense linear algebra over Q and prime fields.

Scalars are plain ``fractions.Fraction`` values over the rationals and least
non-negative residues (ints) over a prime field.  Every operation is pure and
every returned basis is in canonical reduced row echelon form, so outputs are
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import FieldUnsupported, ParseError

#: primes below this floor are rejected outright; the per-module floor
#: (p > dimension of any module processed) is enforced where radicals are
#: computed (see decompose.radical_of_endo).
CHARACTERISTIC_FLOOR = 2


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: exact rationals, or integers modulo a prime p.

    The default field is Q so the characteristic-zero trace criterion for
    radicals is always valid; prime fields are permitted but each radical
    computation re-checks p against the dimension it processes.
    """

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p <= CHARACTERISTIC_FLOOR:
                raise FieldUnsupported(
                    f"prime {self.p} does not exceed the characteristic floor "
                    f"{CHARACTERISTIC_FLOOR}"
                )
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- element arithmetic ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def from_int(self, n: int):
        return Fraction(n) if self.kind == "rational" else n % self.p

    def add(self, a, b):
        return a + b if self.kind == "rational" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "rational" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "rational" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "rational" else (-a) % self.p

    def inv(self, a):
        if self.kind == "rational":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, self.p - 2, self.p)

    def canonical(self, a):
        """Reduce to canonical form (lowest terms / least residue)."""
        if self.kind == "rational":
            return a if isinstance(a, Fraction) else Fraction(a)
        return int(a) % self.p

    # -- serialization -----------------------------------------------------

    def parse_scalar(self, s: str):
        try:
            if self.kind == "rational":
                return Fraction(s)
            return int(s) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {s!r}: {exc}") from exc

    def format_scalar(self, a) -> str:
        return str(self.canonical(a))

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @staticmethod
    def from_json(obj) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError(f"bad field spec {obj!r}")
        if obj["kind"] == "rational":
            return FieldSpec("rational")
        if obj["kind"] == "prime":
            try:
                return FieldSpec("prime", int(obj["p"]))
            except (KeyError, ValueError, FieldUnsupported) as exc:
                raise ParseError(f"bad prime field {obj!r}: {exc}") from exc
        raise ParseError(f"unknown field kind {obj['kind']!r}")


RATIONALS = FieldSpec("rational")


class Matrix:
    """Immutable dense matrix with row-major semantics over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries,
                 _raw: bool = False):
        if _raw:
            ents = entries  # trusted: canonical tuple-of-tuples of the right shape
        else:
            if rows < 0 or cols < 0:
                raise ValueError("negative shape")
            ents = tuple(tuple(field.canonical(x) for x in row) for row in entries)
            if len(ents) != rows or any(len(r) != cols for r in ents):
                raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        row = (field.zero(),) * cols
        return Matrix(field, rows, cols, (row,) * rows, _raw=True)

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, n, n,
                      tuple(tuple(o if i == j else z for j in range(n))
                            for i in range(n)), _raw=True)

    @staticmethod
    def from_rows(field: FieldSpec, rows: Iterable[Iterable]) -> "Matrix":
        rws = [list(r) for r in rows]
        ncols = len(rws[0]) if rws else 0
        return Matrix(field, len(rws), ncols, rws)

    @staticmethod
    def from_int_rows(field: FieldSpec, rows: Iterable[Iterable[int]]) -> "Matrix":
        return Matrix.from_rows(
            field, [[field.from_int(x) for x in row] for row in rows])

    # -- basics ----------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in row)
                         for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(zip(*self.entries)) if self.rows else
                      ((),) * self.cols, _raw=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      tuple(tuple(f.add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)),
                      _raw=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(self.field.from_int(-1))

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.canonical(c)
        return Matrix(f, self.rows, self.cols,
                      tuple(tuple(f.mul(c, x) for x in row)
                            for row in self.entries), _raw=True)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        z = f.zero()
        ot = other.entries
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            acc = [z] * other.cols
            for k in range(self.cols):
                a = srow[k]
                if not a:
                    continue
                orow = ot[k]
                for j in range(other.cols):
                    b = orow[j]
                    if b:
                        acc[j] = f.add(acc[j], f.mul(a, b))
            out.append(tuple(acc))
        return Matrix(f, self.rows, other.cols, tuple(out), _raw=True)

    def apply_row(self, v) -> list:
        """Row vector times this matrix."""
        f, z = self.field, self.field.zero()
        if len(v) != self.rows:
            raise ValueError("row vector length mismatch")
        acc = [z] * self.cols
        for k, a in enumerate(v):
            if not a:
                continue
            row = self.entries[k]
            for j in range(self.cols):
                b = row[j]
                if b:
                    acc[j] = f.add(acc[j], f.mul(a, b))
        return acc

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(r1 + r2 for r1, r2 in
                            zip(self.entries, other.entries)), _raw=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self.entries + other.entries, _raw=True)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Canonical reduced row echelon form and its pivot columns."""
        rows, pivots = _rref([list(r) for r in self.entries], self.cols, self.field)
        return Matrix(self.field, len(rows), self.cols,
                      tuple(map(tuple, rows)), _raw=True), tuple(pivots)

    def rank(self) -> int:
        _, pivots = _rref([list(r) for r in self.entries], self.cols, self.field)
        return len(pivots)

    def kernel_basis(self) -> "Matrix":
        """Canonical basis of the left kernel {v : v @ self = 0}, as rows."""
        # Solutions of self^T x = 0; one generator per non-pivot column of
        # rref(self^T), then a second rref for the canonical echelon form.
        f = self.field
        n = self.rows
        rt, pivots = _rref([[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)], n, f)
        pivot_set = set(pivots)
        z, o = f.zero(), f.one()
        gens = []
        for j in range(n):
            if j in pivot_set:
                continue
            v = [z] * n
            v[j] = o
            for r, pc in zip(rt, pivots):
                if r[j] != z:
                    v[pc] = f.neg(r[j])
            gens.append(v)
        rows, _ = _rref(gens, n, f)
        return Matrix(f, len(rows), n, tuple(map(tuple, rows)), _raw=True)

    def row_space(self) -> "Matrix":
        """Canonical echelon basis of the row space."""
        rows, _ = _rref([list(r) for r in self.entries], self.cols, self.field)
        return Matrix(self.field, len(rows), self.cols,
                      tuple(map(tuple, rows)), _raw=True)

    def solve_left_echelon(self, rhs: "Matrix") -> Optional["Matrix"]:
        """solve_left for a matrix already in reduced row echelon form.

        Coefficients are read off at the pivot columns; one multiplication
        verifies consistency."""
        if rhs.cols != self.cols:
            raise ValueError("rhs column count mismatch")
        pivots = []
        for row in self.entries:
            for j, x in enumerate(row):
                if x:
                    pivots.append(j)
                    break
        if len(pivots) != self.rows:
            return self.solve_left(rhs)  # not actually echelon; full solve
        sols = tuple(tuple(r[p] for p in pivots) for r in rhs.entries)
        x = Matrix(self.field, rhs.rows, self.rows, sols, _raw=True)
        if x * self != rhs:
            return None
        return x

    def solve_left(self, rhs: "Matrix") -> Optional["Matrix"]:
        """Solve X @ self = rhs for X (rhs.rows solutions); None if inconsistent."""
        if rhs.cols != self.cols:
            raise ValueError("rhs column count mismatch")
        f = self.field
        z = f.zero()
        # Echelonize self once, tracking the transformation: T @ self = E.
        n = self.rows
        aug = []
        for i in range(n):
            row = list(self.entries[i]) + [z] * n
            row[self.cols + i] = f.one()
            aug.append(row)
        ech, pivots = _rref(aug, self.cols + n, f)
        # Pivots inside the first `cols` columns describe the row space.
        main = [(r, pc) for r, pc in zip(ech, pivots) if pc < self.cols]
        sols = []
        for i in range(rhs.rows):
            target = list(rhs.entries[i])
            x = [z] * n
            for r, pc in main:
                c = target[pc]
                if c == z:
                    continue
                for j in range(self.cols):
                    target[j] = f.sub(target[j], f.mul(c, r[j]))
                for j in range(n):
                    x[j] = f.add(x[j], f.mul(c, r[self.cols + j]))
            if any(t != z for t in target):
                return None
            sols.append(tuple(x))
        return Matrix(f, rhs.rows, n, tuple(sols), _raw=True)


def _rref(rows: list[list], ncols: int, field: FieldSpec):
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one():
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                coef = rows[i][c]
                rows[i] = [field.sub(x, field.mul(coef, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


class LinearSolver:
    """Prefactored solver for many right-hand sides of x @ m = rhs."""

    def __init__(self, m: Matrix):
        f = m.field
        self.field = f
        self.cols = m.cols
        self.n = m.rows
        z = f.zero()
        aug = []
        for i in range(m.rows):
            row = list(m.entries[i]) + [z] * m.rows
            row[m.cols + i] = f.one()
            aug.append(row)
        ech, pivots = _rref(aug, m.cols + m.rows, f)
        self.main = [(r, pc) for r, pc in zip(ech, pivots) if pc < m.cols]

    def solve_row(self, target) -> Optional[list]:
        f = self.field
        target = list(target)
        x = [f.zero()] * self.n
        for r, pc in self.main:
            c = target[pc]
            if not c:
                continue
            for j in range(self.cols):
                if r[j]:
                    target[j] = f.sub(target[j], f.mul(c, r[j]))
            for j in range(self.n):
                if r[self.cols + j]:
                    x[j] = f.add(x[j], f.mul(c, r[self.cols + j]))
        if any(target):
            return None
        return x


def rank(m: Matrix) -> int:
    """Rank of m over its ambient field."""
    return m.rank()


def kernel_basis(m: Matrix) -> list[tuple]:
    """Canonical echelonized basis of {v : v @ m = 0}, as row tuples."""
    return [tuple(row) for row in m.kernel_basis().entries]
