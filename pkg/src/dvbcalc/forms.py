"""Exact differential forms with polynomial coefficients.

A k-form over a variable list is stored as a sorted tuple of components
(index tuple, coefficient): indices strictly increasing positions into the
variable list, coefficients polynomials over exactly those variables.  All
operations are exact: exterior derivative, wedge, pullback along polynomial
maps, the tangent lift onto doubled variables, and evaluation on rational
vectors.  Degree zero forms are plain polynomials stored under the empty
index tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .ring import MultiPoly, Point, rat

Index = tuple[int, ...]


def _sort_sign(idx: Sequence[int]) -> tuple[Index, int] | None:
    """Sorted index tuple and permutation sign; None when an index repeats."""
    items = list(idx)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1] == items[i]:
            return None
    return tuple(items), sign


def _canonical(
    vars: tuple[str, ...], degree: int, data: Mapping[Index, MultiPoly]
) -> tuple[tuple[Index, MultiPoly], ...]:
    out = []
    for idx in sorted(data):
        if len(idx) != degree:
            raise ValueError(f"index {idx} does not match degree {degree}")
        if any(i < 0 or i >= len(vars) for i in idx):
            raise ValueError(f"index {idx} out of range for {len(vars)} variables")
        poly = data[idx]
        if poly.vars != vars:
            raise ValueError("component variables must match the form")
        if not poly.is_zero:
            out.append((idx, poly))
    return tuple(out)


@dataclass(frozen=True)
class DifferentialForm:
    vars: tuple[str, ...]
    degree: int
    comps: tuple[tuple[Index, MultiPoly], ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("form degree must be nonnegative")
        object.__setattr__(
            self, "comps", _canonical(self.vars, self.degree, dict(self.comps))
        )

    @staticmethod
    def zero(vars: Sequence[str], degree: int) -> DifferentialForm:
        return DifferentialForm(tuple(vars), degree, ())

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def coeff(self, idx: Sequence[int]) -> MultiPoly:
        """Antisymmetric component for any index order."""
        sorted_sign = _sort_sign(idx)
        if sorted_sign is None:
            return MultiPoly.zero(self.vars)
        key, sign = sorted_sign
        for stored, poly in self.comps:
            if stored == key:
                return poly if sign > 0 else -poly
        return MultiPoly.zero(self.vars)

    def _check_compatible(self, other: DifferentialForm) -> None:
        if self.vars != other.vars:
            raise ValueError("forms live over different variable lists")

    def __add__(self, other: DifferentialForm) -> DifferentialForm:
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        data = dict(self.comps)
        for idx, poly in other.comps:
            data[idx] = data.get(idx, MultiPoly.zero(self.vars)) + poly
        return DifferentialForm(self.vars, self.degree, tuple(data.items()))

    def __neg__(self) -> DifferentialForm:
        return self * Fraction(-1)

    def __sub__(self, other: DifferentialForm) -> DifferentialForm:
        return self + (-other)

    def __mul__(self, factor) -> DifferentialForm:
        if not isinstance(factor, MultiPoly):
            factor = MultiPoly.const(self.vars, rat(factor))
        return DifferentialForm(
            self.vars,
            self.degree,
            tuple((idx, poly * factor) for idx, poly in self.comps),
        )

    __rmul__ = __mul__

    def wedge(self, other: DifferentialForm) -> DifferentialForm:
        self._check_compatible(other)
        data: dict[Index, MultiPoly] = {}
        for left_idx, left in self.comps:
            for right_idx, right in other.comps:
                sorted_sign = _sort_sign(left_idx + right_idx)
                if sorted_sign is None:
                    continue
                key, sign = sorted_sign
                term = left * right
                if sign < 0:
                    term = -term
                data[key] = data.get(key, MultiPoly.zero(self.vars)) + term
        return DifferentialForm(self.vars, self.degree + other.degree, tuple(data.items()))

    def d(self) -> DifferentialForm:
        """Exterior derivative."""
        data: dict[Index, MultiPoly] = {}
        for idx, poly in self.comps:
            for u, name in enumerate(self.vars):
                partial = poly.partial(name)
                if partial.is_zero:
                    continue
                sorted_sign = _sort_sign((u,) + idx)
                if sorted_sign is None:
                    continue
                key, sign = sorted_sign
                term = partial if sign > 0 else -partial
                data[key] = data.get(key, MultiPoly.zero(self.vars)) + term
        return DifferentialForm(self.vars, self.degree + 1, tuple(data.items()))

    def pullback(
        self, source_vars: Sequence[str], images: Sequence[MultiPoly]
    ) -> DifferentialForm:
        """Pull back along the map sending each of self's variables to an image.

        Images are polynomials over the source variables, listed in the order
        of self's variables.  Coefficients compose with the map and each
        differential becomes the differential of the image.
        """
        src = tuple(source_vars)
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        for img in images:
            if img.vars != src:
                raise ValueError("images must share the source variable list")
        d_images = [_differential(img) for img in images]
        total = DifferentialForm.zero(src, self.degree)
        for idx, poly in self.comps:
            term = DifferentialForm(
                src, 0, (((), poly.compose(tuple(images))),)
            )
            for j in idx:
                term = term.wedge(d_images[j])
            total = total + term
        return total

    def tangent_lift(self, dot_suffix: str = "_dot") -> DifferentialForm:
        """Lift to the doubled variable list (z, z_dot).

        Coefficients gain the derivative term sum(da/dz_u * z_u_dot) on the
        undotted indices, and each index slot is dotted once in turn.
        """
        big = self.vars + tuple(name + dot_suffix for name in self.vars)
        n = len(self.vars)
        data: dict[Index, MultiPoly] = {}

        def put(idx: Index, poly: MultiPoly) -> None:
            sorted_sign = _sort_sign(idx)
            if sorted_sign is None or poly.is_zero:
                return
            key, sign = sorted_sign
            term = poly if sign > 0 else -poly
            data[key] = data.get(key, MultiPoly.zero(big)) + term

        for idx, poly in self.comps:
            lifted = poly.extend(big)
            dotted_coeff = MultiPoly.zero(big)
            for u, name in enumerate(self.vars):
                partial = poly.partial(name)
                if partial.is_zero:
                    continue
                dotted_coeff = dotted_coeff + partial.extend(big) * MultiPoly.var(
                    big, self.vars[u] + dot_suffix
                )
            put(idx, dotted_coeff)
            for slot in range(len(idx)):
                shifted = idx[:slot] + (idx[slot] + n,) + idx[slot + 1 :]
                put(shifted, lifted)
        return DifferentialForm(big, self.degree, tuple(data.items()))

    def evaluate(self, point: Point, vectors: Sequence[Sequence[Fraction]]) -> Fraction:
        """Value on rational vectors: sum of components times minors."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} vectors, got {len(vectors)}")
        vecs = [tuple(rat(v) for v in vec) for vec in vectors]
        for vec in vecs:
            if len(vec) != len(self.vars):
                raise ValueError("vector arity does not match the variables")
        total = Fraction(0)
        for idx, poly in self.comps:
            minor = tuple(tuple(vec[j] for j in idx) for vec in vecs)
            total += poly.eval(point) * _det(minor)
        return total

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        pieces = []
        for idx, poly in self.comps:
            basis = "^".join(f"d{self.vars[j]}" for j in idx)
            pieces.append(f"({poly}) {basis}".strip())
        return " + ".join(pieces)


def _differential(poly: MultiPoly) -> DifferentialForm:
    data = {}
    for u, name in enumerate(poly.vars):
        partial = poly.partial(name)
        if not partial.is_zero:
            data[(u,)] = partial
    return DifferentialForm(poly.vars, 1, tuple(data.items()))


def d(form: DifferentialForm) -> DifferentialForm:
    return form.d()


def make_form(
    vars: Sequence[str], degree: int, components: Mapping[Sequence[int], MultiPoly]
) -> DifferentialForm:
    """Build a form from components in any index order, antisymmetrizing."""
    vars = tuple(vars)
    data: dict[Index, MultiPoly] = {}
    for raw_idx, poly in components.items():
        sorted_sign = _sort_sign(tuple(raw_idx))
        if sorted_sign is None:
            continue
        key, sign = sorted_sign
        if not isinstance(poly, MultiPoly):
            poly = MultiPoly.const(vars, rat(poly))
        term = poly if sign > 0 else -poly
        data[key] = data.get(key, MultiPoly.zero(vars)) + term
    return DifferentialForm(vars, degree, tuple(data.items()))


def _det(rows: tuple[tuple[Fraction, ...], ...]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    sign = 1
    for col in range(n):
        if rows[0][col] != 0:
            minor = tuple(
                tuple(row[c] for c in range(n) if c != col) for row in rows[1:]
            )
            total += sign * rows[0][col] * _det(minor)
        sign = -sign
    return total
