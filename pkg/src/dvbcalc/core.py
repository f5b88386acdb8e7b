"""Decomposed double vector bundles over a rational polynomial chart.

A decomposed double bundle is a fibered product of three vector bundles over
one chart: a left side fiber F, a core C, and a right side fiber E.  An
element is stored as (x | f | c | e) with every slot a tuple of exact
rationals.  The two vector bundle structures share the core:

    right structure, over the E side:   (f, c, e) + (f', c', e)  = (f+f', c+c', e)
    left  structure, over the F side:   (f, c, e) + (f, c', e')  = (f, c+c', e+e')

Scalar action follows the same split: the right action scales (f, c) and
fixes e, the left action scales (c, e) and fixes f.  The flip exchanges the
two structures by swapping the outer slots.

Morphisms between decomposed bundles over the same chart are block maps over
the identity of the base,

    (f, c, e)  |->  (L(x) f,  C(x) c + Psi(x)(f, e),  R(x) e),

with polynomial matrix blocks and a bilinear polynomial block Psi indexed as
Psi[core-out][e-in][f-in].  Inverses and duals of a morphism divide by block
determinants, so they are computed per base point (FiberMorphism) unless the
blocks are unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .ring import (
    FracMatrix,
    MultiPoly,
    Point,
    PolyMatrix,
    mat_inverse_frac,
    mat_mul_frac,
    mat_transpose_frac,
    mat_vec_frac,
    rat,
)


class BaseMismatchError(ValueError):
    """Two elements live over different base points or charts."""


class FiberMismatchError(ValueError):
    """An operation required matching side fibers and got different ones."""


class NotInKernelError(ValueError):
    """Kernel splitting applied to an element outside the kernel."""


@dataclass(frozen=True)
class Chart:
    """A polynomial coordinate chart; dim 0 models a one point base."""

    names: tuple[str, ...]

    @staticmethod
    def of_dim(n: int, prefix: str = "x") -> Chart:
        if n < 0:
            raise ValueError("chart dimension must be nonnegative")
        return Chart(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.names)

    def point(self, coords: Sequence[Fraction | int | str]) -> Point:
        if len(coords) != self.dim:
            raise ValueError(f"point arity {len(coords)} vs chart dim {self.dim}")
        return tuple(rat(c) for c in coords)


@dataclass(frozen=True)
class VectorBundle:
    """Plain vector bundle data: a chart, a rank, and a display label."""

    chart: Chart
    rank: int
    label: str = "E"


@dataclass(frozen=True)
class DecomposedDVB:
    chart: Chart
    n_F: int
    n_C: int
    n_E: int
    labels: tuple[str, str, str] = ("F", "C", "E")

    def __post_init__(self) -> None:
        if min(self.n_F, self.n_C, self.n_E) < 0:
            raise ValueError("fiber ranks must be nonnegative")

    @property
    def ranks(self) -> tuple[int, int, int]:
        return (self.n_F, self.n_C, self.n_E)

    def flip(self) -> DecomposedDVB:
        return DecomposedDVB(
            self.chart,
            self.n_E,
            self.n_C,
            self.n_F,
            (self.labels[2], self.labels[1], self.labels[0]),
        )

    def element(
        self,
        x: Sequence[Fraction | int | str],
        f: Sequence[Fraction | int | str],
        c: Sequence[Fraction | int | str],
        e: Sequence[Fraction | int | str],
    ) -> DVBElement:
        return DVBElement(
            self,
            self.chart.point(x),
            _slot(f, self.n_F, "F"),
            _slot(c, self.n_C, "C"),
            _slot(e, self.n_E, "E"),
        )

    def zero_over_right(self, x, e) -> DVBElement:
        """Zero of the right structure over the E point (x, e)."""
        return self.element(x, (0,) * self.n_F, (0,) * self.n_C, e)

    def zero_over_left(self, x, f) -> DVBElement:
        """Zero of the left structure over the F point (x, f)."""
        return self.element(x, f, (0,) * self.n_C, (0,) * self.n_E)


def _slot(values, rank: int, name: str) -> tuple[Fraction, ...]:
    out = tuple(rat(v) for v in values)
    if len(out) != rank:
        raise ValueError(f"{name} slot has {len(out)} entries, bundle rank is {rank}")
    return out


@dataclass(frozen=True)
class DVBElement:
    bundle: DecomposedDVB
    x: Point
    f: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    e: tuple[Fraction, ...]

    def flip(self) -> DVBElement:
        """The same point viewed in the flipped bundle."""
        return DVBElement(self.bundle.flip(), self.x, self.e, self.c, self.f)

    def __str__(self) -> str:
        return f"(x={self.x} | f={self.f} | c={self.c} | e={self.e})"


Side = str  # "right" or "left"


def _check_side(side: Side) -> None:
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def _check_same_base(u: DVBElement, v: DVBElement) -> None:
    if u.bundle != v.bundle:
        raise BaseMismatchError("elements belong to different bundles")
    if u.x != v.x:
        raise BaseMismatchError(f"base points differ: {u.x} vs {v.x}")


def fiber_add(side: Side, u: DVBElement, v: DVBElement) -> DVBElement:
    """Add in the chosen structure; the opposite side fiber must agree."""
    _check_side(side)
    _check_same_base(u, v)
    if side == "right":
        if u.e != v.e:
            raise FiberMismatchError("right addition needs a shared E point")
        return DVBElement(
            u.bundle,
            u.x,
            tuple(a + b for a, b in zip(u.f, v.f)),
            tuple(a + b for a, b in zip(u.c, v.c)),
            u.e,
        )
    if u.f != v.f:
        raise FiberMismatchError("left addition needs a shared F point")
    return DVBElement(
        u.bundle,
        u.x,
        u.f,
        tuple(a + b for a, b in zip(u.c, v.c)),
        tuple(a + b for a, b in zip(u.e, v.e)),
    )


def fiber_scale(side: Side, r: Fraction | int | str, v: DVBElement) -> DVBElement:
    _check_side(side)
    factor = rat(r)
    if side == "right":
        return DVBElement(
            v.bundle,
            v.x,
            tuple(factor * a for a in v.f),
            tuple(factor * a for a in v.c),
            v.e,
        )
    return DVBElement(
        v.bundle,
        v.x,
        v.f,
        tuple(factor * a for a in v.c),
        tuple(factor * a for a in v.e),
    )


def fiber_sub(side: Side, u: DVBElement, v: DVBElement) -> DVBElement:
    return fiber_add(side, u, fiber_scale(side, -1, v))


def kernel_split(v: DVBElement) -> tuple[DVBElement, DVBElement]:
    """Split a right-kernel element into its side part and core part.

    The element must project to zero on the E side.  The side part is the
    left zero over (x, f); the core part carries the core slot alone.  Their
    right sum recombines to the input, and the analogous statement for the
    left kernel is reached through the flip.
    """
    if any(a != 0 for a in v.e):
        raise NotInKernelError("element has a nonzero E projection")
    side_part = v.bundle.zero_over_left(v.x, v.f)
    core_part = DVBElement(v.bundle, v.x, (Fraction(0),) * v.bundle.n_F, v.c, v.e)
    return side_part, core_part


def core_embed(bundle: DecomposedDVB, x, c) -> DVBElement:
    """A core tuple as an element with both outer slots zero."""
    return bundle.element(x, (0,) * bundle.n_F, c, (0,) * bundle.n_E)


def core_difference(u: DVBElement, v: DVBElement) -> tuple[Fraction, ...]:
    """Core shift between two elements with equal projections on both sides.

    This is the unique k with u = v +_right (core k over e) and equally
    u = v +_left (core k over f).
    """
    _check_same_base(u, v)
    if u.f != v.f or u.e != v.e:
        raise FiberMismatchError("core difference needs matching F and E slots")
    return tuple(a - b for a, b in zip(u.c, v.c))


def flip(obj):
    """Flip a bundle, element, or morphism to the opposite structure."""
    return obj.flip()


def tangent_prolongation(vb: VectorBundle) -> DecomposedDVB:
    """Shell of the tangent of a vector bundle: sides TM and E, core E.

    Slots read (f, c, e) = (base velocity, fiber velocity, fiber point); the
    right structure is tangent-vector addition at a fixed fiber point, the
    left structure is the derivative of the addition in E.
    """
    return DecomposedDVB(
        vb.chart,
        vb.chart.dim,
        vb.rank,
        vb.rank,
        ("TM", vb.label, vb.label),
    )


def cotangent_prolongation(vb: VectorBundle) -> DecomposedDVB:
    """Shell of the cotangent of a vector bundle: sides E* and E, core T*M.

    Slots read (f, c, e) = (fiber momentum, base momentum, fiber point); a
    covector (x | phi | p | e) pairs with a tangent element (x | xdot | edot
    | e) over the same fiber point as p.xdot + phi.edot.
    """
    return DecomposedDVB(
        vb.chart,
        vb.rank,
        vb.chart.dim,
        vb.rank,
        (vb.label + "*", "T*M", vb.label),
    )


# ---------------------------------------------------------------------------
# Morphisms

PsiBlock = tuple[tuple[tuple[MultiPoly, ...], ...], ...]
FracPsi = tuple[tuple[tuple[Fraction, ...], ...], ...]


def psi_zero(vars, n_c_out: int, n_e_in: int, n_f_in: int) -> PsiBlock:
    z = MultiPoly.zero(vars)
    return tuple(
        tuple(tuple(z for _ in range(n_f_in)) for _ in range(n_e_in))
        for _ in range(n_c_out)
    )


@dataclass(frozen=True)
class DVBMorphism:
    """Block morphism of decomposed bundles over the identity base map."""

    source: DecomposedDVB
    target: DecomposedDVB
    phi_l: PolyMatrix
    phi_c: PolyMatrix
    phi_r: PolyMatrix
    psi: PsiBlock

    def __post_init__(self) -> None:
        if self.source.chart != self.target.chart:
            raise BaseMismatchError("morphism requires a shared chart")
        vars = self.source.chart.names
        shapes = (
            (self.phi_l, self.target.n_F, self.source.n_F),
            (self.phi_c, self.target.n_C, self.source.n_C),
            (self.phi_r, self.target.n_E, self.source.n_E),
        )
        for block, rows, cols in shapes:
            if block.vars != vars:
                raise ValueError("block variables must match the chart")
            # a block with no rows cannot store its column count
            if block.rows != rows or (rows > 0 and block.cols != cols):
                raise ValueError(
                    f"block shape {(block.rows, block.cols)} != {(rows, cols)}"
                )
        if len(self.psi) != self.target.n_C:
            raise ValueError("Psi outer length must be the target core rank")
        for plane in self.psi:
            if len(plane) != self.source.n_E:
                raise ValueError("Psi middle length must be the source E rank")
            for row in plane:
                if len(row) != self.source.n_F:
                    raise ValueError("Psi inner length must be the source F rank")
                for p in row:
                    if p.vars != vars:
                        raise ValueError("Psi entries must match the chart")

    def at(self, x: Point) -> FiberMorphism:
        """Evaluate all blocks at a base point."""
        return FiberMorphism(
            self.source,
            self.target,
            tuple(rat(v) for v in x),
            self.phi_l.eval_at(x),
            self.phi_c.eval_at(x),
            self.phi_r.eval_at(x),
            tuple(
                tuple(tuple(p.eval(x) for p in row) for row in plane)
                for plane in self.psi
            ),
        )

    def apply(self, v: DVBElement) -> DVBElement:
        return self.at(v.x).apply(v)

    def flip(self) -> DVBMorphism:
        """The same morphism between the flipped bundles."""
        n_c, n_e, n_f = self.target.n_C, self.source.n_E, self.source.n_F
        flipped_psi = tuple(
            tuple(
                tuple(self.psi[g][a][b] for a in range(n_e)) for b in range(n_f)
            )
            for g in range(n_c)
        )
        return DVBMorphism(
            self.source.flip(),
            self.target.flip(),
            self.phi_r,
            self.phi_c,
            self.phi_l,
            flipped_psi,
        )


def identity_morphism(bundle: DecomposedDVB) -> DVBMorphism:
    vars = bundle.chart.names
    return DVBMorphism(
        bundle,
        bundle,
        PolyMatrix.identity(vars, bundle.n_F),
        PolyMatrix.identity(vars, bundle.n_C),
        PolyMatrix.identity(vars, bundle.n_E),
        psi_zero(vars, bundle.n_C, bundle.n_E, bundle.n_F),
    )


def compose_morphisms(outer: DVBMorphism, inner: DVBMorphism) -> DVBMorphism:
    """Blockwise composite outer . inner.

    The bilinear block of the composite is C2 Psi1 + Psi2 (L1 x R1).
    """
    if inner.target != outer.source:
        raise ValueError("composition needs inner target equal to outer source")
    vars = inner.source.chart.names
    n_c_out = outer.target.n_C
    n_e_in = inner.source.n_E
    n_f_in = inner.source.n_F
    zero = MultiPoly.zero(vars)

    def psi_entry(g: int, a: int, b: int) -> MultiPoly:
        acc = zero
        for d in range(inner.target.n_C):
            acc = acc + outer.phi_c.entries[g][d] * inner.psi[d][a][b]
        for ap in range(inner.target.n_E):
            for bp in range(inner.target.n_F):
                acc = acc + (
                    outer.psi[g][ap][bp]
                    * inner.phi_r.entries[ap][a]
                    * inner.phi_l.entries[bp][b]
                )
        return acc

    return DVBMorphism(
        inner.source,
        outer.target,
        outer.phi_l * inner.phi_l,
        outer.phi_c * inner.phi_c,
        outer.phi_r * inner.phi_r,
        tuple(
            tuple(
                tuple(psi_entry(g, a, b) for b in range(n_f_in))
                for a in range(n_e_in)
            )
            for g in range(n_c_out)
        ),
    )


@dataclass(frozen=True)
class FiberMorphism:
    """Morphism blocks evaluated at one base point: exact rational data."""

    source: DecomposedDVB
    target: DecomposedDVB
    x: Point
    l: FracMatrix
    c: FracMatrix
    r: FracMatrix
    psi: FracPsi

    def apply(self, v: DVBElement) -> DVBElement:
        if v.bundle != self.source:
            raise BaseMismatchError("element bundle differs from morphism source")
        if v.x != self.x:
            raise BaseMismatchError("element base point differs from block point")
        bilinear = tuple(
            sum(
                (
                    self.psi[g][a][b] * v.e[a] * v.f[b]
                    for a in range(self.source.n_E)
                    for b in range(self.source.n_F)
                ),
                Fraction(0),
            )
            for g in range(self.target.n_C)
        )
        core = tuple(
            p + q for p, q in zip(mat_vec_frac(self.c, v.c), bilinear)
        )
        return DVBElement(
            self.target,
            v.x,
            mat_vec_frac(self.l, v.f),
            core,
            mat_vec_frac(self.r, v.e),
        )

    def after(self, inner: FiberMorphism) -> FiberMorphism:
        if inner.target != self.source or inner.x != self.x:
            raise ValueError("fiber composition needs matching middle bundle and point")

        def psi_entry(g: int, a: int, b: int) -> Fraction:
            acc = Fraction(0)
            for d in range(inner.target.n_C):
                acc += self.c[g][d] * inner.psi[d][a][b]
            for ap in range(inner.target.n_E):
                for bp in range(inner.target.n_F):
                    acc += self.psi[g][ap][bp] * inner.r[ap][a] * inner.l[bp][b]
            return acc

        return FiberMorphism(
            inner.source,
            self.target,
            self.x,
            mat_mul_frac(self.l, inner.l),
            mat_mul_frac(self.c, inner.c),
            mat_mul_frac(self.r, inner.r),
            tuple(
                tuple(
                    tuple(psi_entry(g, a, b) for b in range(inner.source.n_F))
                    for a in range(inner.source.n_E)
                )
                for g in range(self.target.n_C)
            ),
        )

    def inverse(self) -> FiberMorphism:
        """Pointwise inverse; blocks invert and Psi picks up a minus sign."""
        li = mat_inverse_frac(self.l)
        ci = mat_inverse_frac(self.c)
        ri = mat_inverse_frac(self.r)

        def psi_entry(g: int, a: int, b: int) -> Fraction:
            acc = Fraction(0)
            for d in range(self.target.n_C):
                for ap in range(self.source.n_E):
                    for bp in range(self.source.n_F):
                        acc += ci[g][d] * self.psi[d][ap][bp] * ri[ap][a] * li[bp][b]
            return -acc

        return FiberMorphism(
            self.target,
            self.source,
            self.x,
            li,
            ci,
            ri,
            tuple(
                tuple(
                    tuple(psi_entry(g, a, b) for b in range(self.target.n_F))
                    for a in range(self.target.n_E)
                )
                for g in range(self.source.n_C)
            ),
        )

    def flip(self) -> FiberMorphism:
        n_c, n_e, n_f = self.target.n_C, self.source.n_E, self.source.n_F
        return FiberMorphism(
            self.source.flip(),
            self.target.flip(),
            self.x,
            self.r,
            self.c,
            self.l,
            tuple(
                tuple(tuple(self.psi[g][a][b] for a in range(n_e)) for b in range(n_f))
                for g in range(n_c)
            ),
        )


@dataclass(frozen=True)
class PointwiseMorphism:
    """A morphism available through exact per-point block evaluation."""

    source: DecomposedDVB
    target: DecomposedDVB
    blocks_at: Callable[[Point], FiberMorphism]

    def at(self, x: Point) -> FiberMorphism:
        fm = self.blocks_at(tuple(rat(v) for v in x))
        if fm.source != self.source or fm.target != self.target:
            raise ValueError("pointwise blocks disagree with declared bundles")
        return fm

    def apply(self, v: DVBElement) -> DVBElement:
        return self.at(v.x).apply(v)


def invert_morphism(phi: DVBMorphism) -> PointwiseMorphism:
    """Pointwise inverse of an isomorphism; singular points raise on use."""
    if phi.source.ranks != phi.target.ranks:
        raise ValueError("only square-rank morphisms can be inverted")
    return PointwiseMorphism(
        phi.target, phi.source, lambda x: phi.at(x).inverse()
    )


def invert_morphism_poly(phi: DVBMorphism) -> DVBMorphism:
    """Polynomial inverse, available when every block is unimodular."""
    li = phi.phi_l.unimodular_inverse()
    ci = phi.phi_c.unimodular_inverse()
    ri = phi.phi_r.unimodular_inverse()
    if li is None or ci is None or ri is None:
        raise ValueError("blocks are not unimodular; use invert_morphism")
    vars = phi.source.chart.names
    zero = MultiPoly.zero(vars)

    def psi_entry(g: int, a: int, b: int) -> MultiPoly:
        acc = zero
        for d in range(phi.target.n_C):
            for ap in range(phi.source.n_E):
                for bp in range(phi.source.n_F):
                    acc = acc + (
                        ci.entries[g][d]
                        * phi.psi[d][ap][bp]
                        * ri.entries[ap][a]
                        * li.entries[bp][b]
                    )
        return -acc

    return DVBMorphism(
        phi.target,
        phi.source,
        li,
        ci,
        ri,
        tuple(
            tuple(
                tuple(psi_entry(g, a, b) for b in range(phi.target.n_F))
                for a in range(phi.target.n_E)
            )
            for g in range(phi.source.n_C)
        ),
    )
