"""Duals of decomposed double bundles and the canonical pairings.

Dualizing along the right structure permutes the three fiber slots: the dual
of a bundle with sides (F, E) and core C has sides (E, C*) and core F*.  An
element of the dual is stored as (x | e | p | q) with p a covector on F and
q a covector on C; the evaluation against (x | f | c | e) is p.f + q.c and
both bundles must sit over the same E point.  The left dual is never written
by hand: it is flip, then right dual, then flip.

Applying the right dual three times returns the original bundle object, but
the identification hides a sign: the canonical map to the third dual negates
the core slot.  Three companion maps with other sign patterns satisfy the
same kind of evaluation relation; all four are involutive block morphisms.
Transporting a dualized morphism back through the canonical maps recovers
its inverse, while transporting through the plain slot identification does
not once the bilinear block is nonzero.

Dual morphisms divide by the right block, so they are pointwise objects; a
polynomial route exists when that block is unimodular.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import (
    BaseMismatchError,
    DecomposedDVB,
    DVBElement,
    DVBMorphism,
    FiberMorphism,
    PointwiseMorphism,
    psi_zero,
)
from .ring import (
    MultiPoly,
    Point,
    PolyMatrix,
    dot,
    mat_inverse_frac,
    mat_transpose_frac,
    rat,
)


class ProjectionMismatchError(ValueError):
    """Paired elements do not project to the same side point."""


def dual_label(label: str) -> str:
    """Starred label with double stars collapsed, so dualizing is involutive."""
    return label[:-1] if label.endswith("*") else label + "*"


def right_dual(b: DecomposedDVB) -> DecomposedDVB:
    """Dual along the right structure: sides (E, C*), core F*."""
    return DecomposedDVB(
        b.chart,
        b.n_E,
        b.n_F,
        b.n_C,
        (b.labels[2], dual_label(b.labels[0]), dual_label(b.labels[1])),
    )


def left_dual(b: DecomposedDVB) -> DecomposedDVB:
    """Dual along the left structure, computed as flip . right_dual . flip."""
    return right_dual(b.flip()).flip()


def triple_right_dual(b: DecomposedDVB) -> DecomposedDVB:
    """Right dual applied three times; equal to b itself in this model."""
    return right_dual(right_dual(right_dual(b)))


def _check_pairable(v: DVBElement, a: DVBElement, dual: DecomposedDVB, leg: str) -> None:
    if a.bundle != dual:
        raise BaseMismatchError("second argument does not live in the dual bundle")
    if v.x != a.x:
        raise BaseMismatchError(f"base points differ: {v.x} vs {a.x}")
    if leg == "right":
        if v.e != a.f:
            raise ProjectionMismatchError("elements project to different E points")
    elif v.f != a.e:
        raise ProjectionMismatchError("elements project to different F points")


def pair_r(v: DVBElement, a: DVBElement) -> Fraction:
    """Evaluate a right-dual element on v over a shared right projection.

    With v = (x | f | c | e) and a = (x | e | p | q) the value is p.f + q.c.
    """
    _check_pairable(v, a, right_dual(v.bundle), "right")
    return dot(a.c, v.f) + dot(a.e, v.c)


def pair_l(v: DVBElement, b: DVBElement) -> Fraction:
    """Evaluate a left-dual element on v; reduced to pair_r through the flip."""
    _check_pairable(v, b, left_dual(v.bundle), "left")
    return pair_r(v.flip(), b.flip())


# ---------------------------------------------------------------------------
# Dual morphisms

def fiber_right_dual(fm: FiberMorphism) -> FiberMorphism:
    """Right dual of one fiber of an isomorphism; reverses the direction.

    Blocks: the new left block is the inverse of the old right block, the new
    core and right blocks are the transposes of the old left and core blocks,
    and the bilinear block composes the old one with that inverse.
    """
    rinv = mat_inverse_frac(fm.r)
    n_a = fm.source.n_F  # core-out rank of the dual
    n_g = fm.target.n_C  # e-in rank of the dual
    n_ap = fm.target.n_E  # f-in rank of the dual

    def psi_entry(big_a: int, g: int, ap: int) -> Fraction:
        return sum(
            (fm.psi[g][a][big_a] * rinv[a][ap] for a in range(fm.source.n_E)),
            Fraction(0),
        )

    return FiberMorphism(
        right_dual(fm.target),
        right_dual(fm.source),
        fm.x,
        rinv,
        mat_transpose_frac(fm.l),
        mat_transpose_frac(fm.c),
        tuple(
            tuple(tuple(psi_entry(big_a, g, ap) for ap in range(n_ap)) for g in range(n_g))
            for big_a in range(n_a)
        ),
    )


def right_dual_morphism(phi) -> PointwiseMorphism:
    """Right dual of an isomorphism as a pointwise morphism.

    Accepts a block morphism or another pointwise morphism.  The adjoint
    contract pins the convention: pairing phi(v) against a equals pairing v
    against the dual image of a, whenever the projections match.
    """
    return PointwiseMorphism(
        right_dual(phi.target),
        right_dual(phi.source),
        lambda x: fiber_right_dual(phi.at(x)),
    )


def right_dual_morphism_poly(phi: DVBMorphism) -> DVBMorphism:
    """Polynomial right dual, available when the right block is unimodular."""
    rinv = phi.phi_r.unimodular_inverse()
    if rinv is None:
        raise ValueError("right block is not unimodular; use right_dual_morphism")
    vars = phi.source.chart.names
    zero = MultiPoly.zero(vars)

    def psi_entry(big_a: int, g: int, ap: int) -> MultiPoly:
        acc = zero
        for a in range(phi.source.n_E):
            acc = acc + phi.psi[g][a][big_a] * rinv.entries[a][ap]
        return acc

    return DVBMorphism(
        right_dual(phi.target),
        right_dual(phi.source),
        rinv,
        phi.phi_l.transpose(),
        phi.phi_c.transpose(),
        tuple(
            tuple(
                tuple(psi_entry(big_a, g, ap) for ap in range(phi.target.n_E))
                for g in range(phi.target.n_C)
            )
            for big_a in range(phi.source.n_F)
        ),
    )


# ---------------------------------------------------------------------------
# Canonical maps onto the third dual

R_VARIANTS = ("R", "R+-", "R-+", "R=")

_VARIANT_SIGNS = {
    "R": (1, -1, 1),
    "R+-": (1, 1, -1),
    "R-+": (-1, 1, 1),
    "R=": (-1, -1, -1),
}

# evaluation relation <a, alpha> = s1 <v, a> + s2 <alpha, phi>
_VARIANT_RELATION = {
    "R": (1, 1),
    "R+-": (1, -1),
    "R-+": (-1, 1),
    "R=": (-1, -1),
}


def _normalize_variant(variant: str) -> str:
    name = variant.replace("±", "+-").replace("∓", "-+")
    if name not in _VARIANT_SIGNS:
        raise ValueError(f"unknown canonical map variant {variant!r}")
    return name


def canonical_R(variant: str, v: DVBElement) -> DVBElement:
    """Image of v under a canonical map onto the third right dual.

    The base map negates the core slot; the +- and -+ companions negate the
    E or F slot instead, and the = companion negates all three.
    """
    s_f, s_c, s_e = _VARIANT_SIGNS[_normalize_variant(variant)]
    return DVBElement(
        triple_right_dual(v.bundle),
        v.x,
        tuple(s_f * a for a in v.f),
        tuple(s_c * a for a in v.c),
        tuple(s_e * a for a in v.e),
    )


def canonical_R_morphism(b: DecomposedDVB, variant: str = "R") -> DVBMorphism:
    """The canonical map as a block morphism with signed identity blocks."""
    s_f, s_c, s_e = _VARIANT_SIGNS[_normalize_variant(variant)]
    vars = b.chart.names

    def signed(n: int, s: int) -> PolyMatrix:
        ident = PolyMatrix.identity(vars, n)
        return ident if s > 0 else -ident

    return DVBMorphism(
        b,
        triple_right_dual(b),
        signed(b.n_F, s_f),
        signed(b.n_C, s_c),
        signed(b.n_E, s_e),
        psi_zero(vars, b.n_C, b.n_E, b.n_F),
    )


def verify_R_relation(
    v: DVBElement,
    phi: DVBElement,
    samples: int = 60,
    seed: int = 0,
    variant: str = "R",
    grid=None,
) -> bool:
    """Check the evaluation relation that characterizes the canonical maps.

    The candidate phi lives in the third right dual of v's bundle.  For each
    compatible pair (a, alpha), with a in the first dual over the E point of
    v and alpha in the second dual over the C* point of a and the F point of
    phi, the relation reads

        <a, alpha> = s1 <v, a> + s2 <alpha, phi>

    with the sign pair of the chosen variant.  The free slots are the F* and
    C* covectors of a and the E* covector of alpha; they are drawn at random,
    or enumerated exhaustively over `grid` values when given.
    """
    s1, s2 = _VARIANT_RELATION[_normalize_variant(variant)]
    bundle = v.bundle
    if phi.bundle != triple_right_dual(bundle):
        raise ProjectionMismatchError("candidate lives in the wrong bundle")
    if phi.x != v.x:
        raise ProjectionMismatchError("candidate sits over a different base point")
    d1 = right_dual(bundle)
    d2 = right_dual(d1)
    free = bundle.n_F + bundle.n_C + bundle.n_E

    if grid is not None:
        values = [rat(g) for g in grid]
        pool = itertools.product(values, repeat=free)
    else:
        rng = random.Random(seed)

        def draw():
            return tuple(
                Fraction(rng.randint(-7, 7), rng.randint(1, 7)) for _ in range(free)
            )

        pool = (draw() for _ in range(samples))

    for slots in pool:
        p = slots[: bundle.n_F]
        q = slots[bundle.n_F : bundle.n_F + bundle.n_C]
        eps = slots[bundle.n_F + bundle.n_C :]
        a = DVBElement(d1, v.x, v.e, p, q)
        alpha = DVBElement(d2, v.x, q, eps, phi.f)
        if pair_r(a, alpha) != s1 * pair_r(v, a) + s2 * pair_r(alpha, phi):
            return False
    return True


def _triple_fiber_dual(fm: FiberMorphism) -> FiberMorphism:
    return fiber_right_dual(fiber_right_dual(fiber_right_dual(fm)))


def third_dual_transport(phi) -> PointwiseMorphism:
    """Triple dual of an isomorphism conjugated by the canonical maps.

    The composite runs from the target back to the source and reproduces the
    pointwise inverse of phi, sign bookkeeping included.
    """
    r_source = canonical_R_morphism(phi.source)
    r_target = canonical_R_morphism(phi.target)

    def blocks(x: Point) -> FiberMorphism:
        lifted = _triple_fiber_dual(phi.at(x)).after(r_target.at(x))
        return r_source.at(x).inverse().after(lifted)

    return PointwiseMorphism(phi.target, phi.source, blocks)


def naive_third_dual_transport(phi) -> PointwiseMorphism:
    """Triple dual read back through the plain slot identification.

    Skipping the canonical maps drops their core sign, so the result agrees
    with the inverse of phi only while the bilinear block vanishes.
    """
    return PointwiseMorphism(
        phi.target, phi.source, lambda x: _triple_fiber_dual(phi.at(x))
    )
