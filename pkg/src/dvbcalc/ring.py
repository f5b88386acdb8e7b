"""Exact coefficient arithmetic: rationals, sparse multivariate polynomials,
and small dense matrices over them.

Scalars are `fractions.Fraction`: arbitrary precision, always reduced, with a
positive denominator, so equality of values is equality of representations.

A polynomial is stored against an explicit tuple of variable names.  Terms
live in a sorted tuple of (exponent vector, coefficient) pairs: coefficients
are never zero and the terms are kept in descending graded-lexicographic
order (total degree first, then the exponent vector).  Two polynomials are
mathematically equal exactly when their stored forms are equal, which makes
the dataclass equality and hash canonical.

Matrix inversion is never done symbolically.  Linear systems are solved at a
rational base point by clearing denominators and running fraction-free
(Bareiss) elimination, so every intermediate value stays an exact integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]
Point = tuple[Fraction, ...]


class SingularMatrixError(ArithmeticError):
    """Raised when a linear solve or inversion meets a singular matrix."""


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _term_key(item: tuple[Exponent, Fraction]) -> tuple[int, Exponent]:
    exps, _ = item
    return (sum(exps), exps)


def _canonical(
    vars: tuple[str, ...], data: Mapping[Exponent, Fraction]
) -> tuple[tuple[Exponent, Fraction], ...]:
    terms = []
    for exps, coeff in data.items():
        if coeff == 0:
            continue
        if len(exps) != len(vars):
            raise ValueError(
                f"exponent vector {exps} does not match arity {len(vars)}"
            )
        if any(k < 0 for k in exps):
            raise ValueError(f"negative exponent in {exps}")
        terms.append((tuple(exps), coeff))
    terms.sort(key=_term_key, reverse=True)
    return tuple(terms)


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial with Fraction coefficients over named variables."""

    vars: tuple[str, ...]
    terms: tuple[tuple[Exponent, Fraction], ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_dict(
        vars: Sequence[str], data: Mapping[Exponent, Fraction | int | str]
    ) -> MultiPoly:
        vt = tuple(vars)
        return MultiPoly(vt, _canonical(vt, {tuple(e): rat(c) for e, c in data.items()}))

    @staticmethod
    def zero(vars: Sequence[str]) -> MultiPoly:
        return MultiPoly(tuple(vars), ())

    @staticmethod
    def const(vars: Sequence[str], value: Fraction | int | str) -> MultiPoly:
        vt = tuple(vars)
        c = rat(value)
        if c == 0:
            return MultiPoly(vt, ())
        return MultiPoly(vt, (((0,) * len(vt), c),))

    @staticmethod
    def var(vars: Sequence[str], name: str) -> MultiPoly:
        vt = tuple(vars)
        if name not in vt:
            raise ValueError(f"unknown variable {name!r}; have {vt}")
        exps = tuple(1 if v == name else 0 for v in vt)
        return MultiPoly(vt, ((exps, Fraction(1)),))

    # -- helpers -----------------------------------------------------------

    def _check_compatible(self, other: MultiPoly) -> None:
        if self.vars != other.vars:
            raise ValueError(
                f"variable lists differ: {self.vars} vs {other.vars}"
            )

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def coeff(self, exps: Exponent) -> Fraction:
        for e, c in self.terms:
            if e == exps:
                return c
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        if not self.terms:
            return -1
        return sum(self.terms[0][0])

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            raise ValueError(f"unknown variable {name!r}; have {self.vars}")
        idx = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[idx] for e, _ in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check_compatible(other)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, _canonical(self.vars, acc))

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.vars, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        self._check_compatible(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, _canonical(self.vars, acc))

    def __rmul__(self, other: Fraction | int) -> MultiPoly:
        return self.scale(other)

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, factor: Fraction | int | str) -> MultiPoly:
        f = rat(factor)
        if f == 0:
            return MultiPoly.zero(self.vars)
        return MultiPoly(self.vars, tuple((e, f * c) for e, c in self.terms))

    def partial(self, name: str) -> MultiPoly:
        """Formal partial derivative with respect to one variable."""
        if name not in self.vars:
            raise ValueError(f"unknown variable {name!r}; have {self.vars}")
        idx = self.vars.index(name)
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            k = e[idx]
            if k == 0:
                continue
            de = e[:idx] + (k - 1,) + e[idx + 1 :]
            acc[de] = acc.get(de, Fraction(0)) + c * k
        return MultiPoly(self.vars, _canonical(self.vars, acc))

    def eval(self, point: Sequence[Fraction | int | str]) -> Fraction:
        """Evaluate at a rational point given in variable order."""
        if len(point) != len(self.vars):
            raise ValueError(
                f"point arity {len(point)} does not match {len(self.vars)} variables"
            )
        pt = [rat(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms:
            value = c
            for base, k in zip(pt, e):
                if k:
                    value *= base ** k
            total += value
        return total

    def compose(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Substitute one polynomial per variable; images share a variable list."""
        if len(images) != len(self.vars):
            raise ValueError(
                f"{len(images)} images for {len(self.vars)} variables"
            )
        if not images:
            # Constant polynomial over no variables keeps its value.
            return self
        target = images[0].vars
        for img in images:
            if img.vars != target:
                raise ValueError("images use differing variable lists")
        out = MultiPoly.zero(target)
        for e, c in self.terms:
            term = MultiPoly.const(target, c)
            for img, k in zip(images, e):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def rename(self, vars: Sequence[str]) -> MultiPoly:
        """Reinterpret over equally long variable list (positional)."""
        vt = tuple(vars)
        if len(vt) != len(self.vars):
            raise ValueError("renaming must preserve arity")
        return MultiPoly(vt, self.terms)

    def extend(self, vars: Sequence[str]) -> MultiPoly:
        """Embed into a superset variable list (by name)."""
        vt = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vt:
                raise ValueError(f"variable {v!r} missing from {vt}")
            pos.append(vt.index(v))
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            ne = [0] * len(vt)
            for p, k in zip(pos, e):
                ne[p] = k
            acc[tuple(ne)] = acc.get(tuple(ne), Fraction(0)) + c
        return MultiPoly(vt, _canonical(vt, acc))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dot of tuples with lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# Rational matrices (nested tuples of Fraction)

FracMatrix = tuple[tuple[Fraction, ...], ...]


def frac_matrix(rows: Iterable[Iterable[Fraction | int | str]]) -> FracMatrix:
    return tuple(tuple(rat(x) for x in row) for row in rows)


def mat_identity_frac(n: int) -> FracMatrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_vec_frac(m: FracMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(dot(row, v) for row in m)


def mat_mul_frac(a: FracMatrix, b: FracMatrix) -> FracMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch in product")
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
            for j in range(cols)
        )
        for i in range(len(a))
    )


def mat_transpose_frac(a: FracMatrix) -> FracMatrix:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return tuple(tuple(a[i][j] for i in range(rows)) for j in range(cols))


def solve_fraction_free(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Solve a square rational system exactly by fraction-free elimination.

    Rows are scaled to integers first; the elimination then performs only
    exact integer divisions (Bareiss), and back substitution reintroduces
    rationals at the end.  Raises SingularMatrixError on a zero pivot chain.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve requires a square matrix and matching rhs")
    if n == 0:
        return ()
    # Integer augmented matrix: clear denominators row by row.
    aug: list[list[int]] = []
    for row, b in zip(matrix, rhs):
        entries = [Fraction(x) for x in row] + [Fraction(b)]
        scale = 1
        for x in entries:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        aug.append([int(x * scale) for x in entries])

    prev = 1
    for k in range(n - 1):
        if aug[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if pivot is None:
                raise SingularMatrixError("singular matrix in fraction-free solve")
            aug[k], aug[pivot] = aug[pivot], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]
    if aug[n - 1][n - 1] == 0:
        raise SingularMatrixError("singular matrix in fraction-free solve")

    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * solution[j]
        solution[i] = acc / aug[i][i]
    return tuple(solution)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def mat_inverse_frac(a: FracMatrix) -> FracMatrix:
    """Exact inverse of a square rational matrix, column by column."""
    n = len(a)
    cols = []
    for j in range(n):
        unit = tuple(Fraction(1 if i == j else 0) for i in range(n))
        cols.append(solve_fraction_free(a, unit))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Polynomial matrices


@dataclass(frozen=True)
class PolyMatrix:
    """Dense matrix of MultiPoly entries over one shared variable list."""

    vars: tuple[str, ...]
    entries: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged polynomial matrix")
        for row in self.entries:
            for p in row:
                if p.vars != self.vars:
                    raise ValueError(
                        f"entry variables {p.vars} differ from matrix {self.vars}"
                    )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def build(vars: Sequence[str], rows: int, cols: int, fn) -> PolyMatrix:
        vt = tuple(vars)
        return PolyMatrix(
            vt, tuple(tuple(fn(i, j) for j in range(cols)) for i in range(rows))
        )

    @staticmethod
    def zero(vars: Sequence[str], rows: int, cols: int) -> PolyMatrix:
        z = MultiPoly.zero(vars)
        return PolyMatrix.build(vars, rows, cols, lambda i, j: z)

    @staticmethod
    def identity(vars: Sequence[str], n: int) -> PolyMatrix:
        one = MultiPoly.const(vars, 1)
        z = MultiPoly.zero(vars)
        return PolyMatrix.build(vars, n, n, lambda i, j: one if i == j else z)

    @staticmethod
    def constant(vars: Sequence[str], rows) -> PolyMatrix:
        vt = tuple(vars)
        return PolyMatrix(
            vt, tuple(tuple(MultiPoly.const(vt, x) for x in row) for row in rows)
        )

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch in sum")
        return PolyMatrix.build(
            self.vars,
            self.rows,
            self.cols,
            lambda i, j: self.entries[i][j] + other.entries[i][j],
        )

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix.build(
            self.vars, self.rows, self.cols, lambda i, j: -self.entries[i][j]
        )

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            # a matrix with no rows stores no column count; the product is
            # still well defined and empty or zero
            if self.rows == 0 or (self.cols == 0 and other.rows == 0):
                return PolyMatrix.zero(self.vars, self.rows, other.cols)
            raise ValueError("matrix shape mismatch in product")
        z = MultiPoly.zero(self.vars)

        def entry(i: int, j: int) -> MultiPoly:
            acc = z
            for k in range(self.cols):
                acc = acc + self.entries[i][k] * other.entries[k][j]
            return acc

        return PolyMatrix.build(self.vars, self.rows, other.cols, entry)

    def scale(self, factor: Fraction | int) -> PolyMatrix:
        return PolyMatrix.build(
            self.vars, self.rows, self.cols, lambda i, j: self.entries[i][j].scale(factor)
        )

    def transpose(self) -> PolyMatrix:
        return PolyMatrix.build(
            self.vars, self.cols, self.rows, lambda i, j: self.entries[j][i]
        )

    def eval_at(self, point: Point) -> FracMatrix:
        return tuple(tuple(p.eval(point) for p in row) for row in self.entries)

    def apply_poly(self, vector: Sequence[MultiPoly]) -> tuple[MultiPoly, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length and matrix width differ")
        out = []
        for row in self.entries:
            acc = MultiPoly.zero(self.vars)
            for p, q in zip(row, vector):
                acc = acc + p * q
            out.append(acc)
        return tuple(out)

    def det(self) -> MultiPoly:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return MultiPoly.const(self.vars, 1)
        if n == 1:
            return self.entries[0][0]
        acc = MultiPoly.zero(self.vars)
        sign = 1
        for j in range(n):
            minor = PolyMatrix(
                self.vars,
                tuple(
                    tuple(row[k] for k in range(n) if k != j)
                    for row in self.entries[1:]
                ),
            )
            acc = acc + self.entries[0][j].scale(sign) * minor.det()
            sign = -sign
        return acc

    def unimodular_inverse(self) -> PolyMatrix | None:
        """Polynomial inverse when the determinant is a nonzero constant.

        Returns None when the determinant is non-constant or zero; then only
        pointwise inversion is available.
        """
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        d = self.det()
        if d.is_zero or d.total_degree() > 0:
            return None
        scale = 1 / d.coeff((0,) * len(self.vars))
        n = self.rows
        if n == 0:
            return self

        def cofactor(i: int, j: int) -> MultiPoly:
            minor = PolyMatrix(
                self.vars,
                tuple(
                    tuple(self.entries[r][k] for k in range(n) if k != j)
                    for r in range(n)
                    if r != i
                ),
            )
            sign = 1 if (i + j) % 2 == 0 else -1
            return minor.det().scale(sign)

        # Adjugate transpose gives the inverse once scaled by 1/det.
        return PolyMatrix.build(
            self.vars, n, n, lambda i, j: cofactor(j, i).scale(scale)
        )


def mat_solve_at(
    matrix: PolyMatrix, point: Point, rhs: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Evaluate a square polynomial matrix at a point and solve exactly."""
    return solve_fraction_free(matrix.eval_at(point), tuple(rat(x) for x in rhs))
