import random
from fractions import Fraction

import pytest

from dvbcalc.core import (
    BaseMismatchError,
    Chart,
    DecomposedDVB,
    DVBMorphism,
    FiberMismatchError,
    NotInKernelError,
    VectorBundle,
    compose_morphisms,
    core_difference,
    core_embed,
    cotangent_prolongation,
    fiber_add,
    fiber_scale,
    fiber_sub,
    flip,
    identity_morphism,
    invert_morphism,
    invert_morphism_poly,
    kernel_split,
    psi_zero,
    tangent_prolongation,
)
from dvbcalc.ring import MultiPoly, PolyMatrix, rat

CHART = Chart.of_dim(1)
B = DecomposedDVB(CHART, 1, 1, 1)
B222 = DecomposedDVB(Chart.of_dim(2), 2, 2, 2)


def rand_rat(rng):
    return Fraction(rng.randint(-7, 7), rng.randint(1, 7))


def rand_tuple(rng, n):
    return tuple(rand_rat(rng) for _ in range(n))


def scalar_morphism(l, c, r, psi):
    vars = CHART.names
    return DVBMorphism(
        B,
        B,
        PolyMatrix.constant(vars, [[l]]),
        PolyMatrix.constant(vars, [[c]]),
        PolyMatrix.constant(vars, [[r]]),
        ((((MultiPoly.const(vars, psi)),),),),
    )


# -- fiber structures ---------------------------------------------------------


def test_right_add():
    u = B.element((0,), (1,), (2,), (5,))
    v = B.element((0,), (3,), (4,), (5,))
    assert fiber_add("right", u, v) == B.element((0,), (4,), (6,), (5,))


def test_left_add():
    u = B.element((0,), (5,), (2,), (1,))
    v = B.element((0,), (5,), (4,), (3,))
    assert fiber_add("left", u, v) == B.element((0,), (5,), (6,), (4,))


def test_scales():
    v = B.element((0,), (1,), (2,), (3,))
    assert fiber_scale("right", 2, v) == B.element((0,), (2,), (4,), (3,))
    assert fiber_scale("left", 2, v) == B.element((0,), (1,), (4,), (6,))


def test_sub_inverts_add():
    u = B.element((0,), (1,), (2,), (5,))
    v = B.element((0,), (3,), (4,), (5,))
    assert fiber_sub("right", fiber_add("right", u, v), v) == u
    w = B.element((0,), (1,), (7,), (9,))
    assert fiber_sub("left", fiber_add("left", u, w), w) == u


def test_zero_sections():
    v = B.element((0,), (1,), (2,), (3,))
    zr = B.zero_over_right((0,), (3,))
    zl = B.zero_over_left((0,), (1,))
    assert fiber_add("right", v, zr) == v
    assert fiber_add("left", v, zl) == v


def test_add_mismatch_errors():
    u = B.element((0,), (1,), (2,), (3,))
    v = B.element((0,), (1,), (2,), (4,))
    with pytest.raises(FiberMismatchError):
        fiber_add("right", u, v)
    w = B.element((1,), (1,), (2,), (3,))
    with pytest.raises(BaseMismatchError):
        fiber_add("right", u, w)
    other = DecomposedDVB(CHART, 1, 1, 1, ("A", "B", "C"))
    with pytest.raises(BaseMismatchError):
        fiber_add("left", u, other.element((0,), (1,), (2,), (3,)))


def test_interchange_law_random():
    rng = random.Random(7)
    for _ in range(100):
        x = rand_tuple(rng, 2)
        f, fp = rand_tuple(rng, 2), rand_tuple(rng, 2)
        e, ep = rand_tuple(rng, 2), rand_tuple(rng, 2)
        a = B222.element(x, f, rand_tuple(rng, 2), e)
        b = B222.element(x, fp, rand_tuple(rng, 2), e)
        c = B222.element(x, f, rand_tuple(rng, 2), ep)
        d = B222.element(x, fp, rand_tuple(rng, 2), ep)
        lhs = fiber_add("left", fiber_add("right", a, b), fiber_add("right", c, d))
        rhs = fiber_add("right", fiber_add("left", a, c), fiber_add("left", b, d))
        assert lhs == rhs


def test_core_addition_agreement():
    rng = random.Random(11)
    for _ in range(50):
        x = rand_tuple(rng, 2)
        u = core_embed(B222, x, rand_tuple(rng, 2))
        v = core_embed(B222, x, rand_tuple(rng, 2))
        assert fiber_add("right", u, v) == fiber_add("left", u, v)


def test_kernel_split_recombines():
    v = B222.element((1, 2), (3, 4), (5, 6), (0, 0))
    side, core = kernel_split(v)
    assert side == B222.zero_over_left((1, 2), (3, 4))
    assert core == core_embed(B222, (1, 2), (5, 6))
    assert fiber_add("right", side, core) == v


def test_kernel_split_projector_laws():
    v = B222.element((1, 2), (3, 4), (5, 6), (0, 0))
    side, core = kernel_split(v)
    side2, side_core = kernel_split(side)
    assert side2 == side and side_core == core_embed(B222, (1, 2), (0, 0))
    core_side, core2 = kernel_split(core)
    assert core2 == core and core_side == B222.zero_over_left((1, 2), (0, 0))


def test_kernel_split_rejects_nonkernel():
    with pytest.raises(NotInKernelError):
        kernel_split(B.element((0,), (1,), (2,), (3,)))


def test_unique_core_difference_both_structures():
    rng = random.Random(13)
    for _ in range(50):
        x = rand_tuple(rng, 2)
        f, e = rand_tuple(rng, 2), rand_tuple(rng, 2)
        u = B222.element(x, f, rand_tuple(rng, 2), e)
        v = B222.element(x, f, rand_tuple(rng, 2), e)
        k = core_difference(u, v)
        via_right = fiber_add("right", v, B222.element(x, (0, 0), k, e))
        via_left = fiber_add("left", v, B222.element(x, f, k, (0, 0)))
        assert via_right == u and via_left == u


# -- flip ---------------------------------------------------------------------


def test_flip_bundle_and_element():
    bundle = DecomposedDVB(CHART, 2, 1, 3, ("F", "C", "E"))
    assert flip(bundle).ranks == (3, 1, 2)
    assert flip(flip(bundle)) == bundle
    v = bundle.element((0,), (1, 2), (3,), (4, 5, 6))
    assert flip(v) == flip(bundle).element((0,), (4, 5, 6), (3,), (1, 2))
    assert flip(flip(v)) == v


def test_flip_exchanges_additions():
    rng = random.Random(17)
    for _ in range(50):
        x = rand_tuple(rng, 2)
        e = rand_tuple(rng, 2)
        u = B222.element(x, rand_tuple(rng, 2), rand_tuple(rng, 2), e)
        v = B222.element(x, rand_tuple(rng, 2), rand_tuple(rng, 2), e)
        assert flip(fiber_add("right", u, v)) == fiber_add("left", flip(u), flip(v))
        assert flip(fiber_scale("right", rat("2/3"), u)) == fiber_scale(
            "left", rat("2/3"), flip(u)
        )


# -- prolongation shells --------------------------------------------------------


def test_tangent_prolongation_shell():
    vb = VectorBundle(Chart.of_dim(2), 3, "E")
    shell = tangent_prolongation(vb)
    assert shell.ranks == (2, 3, 3)
    assert shell.labels == ("TM", "E", "E")


def test_cotangent_prolongation_shell():
    vb = VectorBundle(Chart.of_dim(2), 3, "E")
    shell = cotangent_prolongation(vb)
    assert shell.ranks == (3, 2, 3)
    assert shell.labels == ("E*", "T*M", "E")


# -- morphisms ------------------------------------------------------------------


def test_apply_scalar_example():
    phi = scalar_morphism(2, 3, 5, 7)
    v = B.element((0,), (1,), (1,), (1,))
    assert phi.apply(v) == B.element((0,), (2,), (10,), (5,))


def test_apply_preserves_kernels():
    phi = scalar_morphism(2, 3, 5, 7)
    v = B.element((0,), (1,), (4,), (0,))
    assert phi.apply(v).e == (Fraction(0),)
    w = B.element((0,), (0,), (4,), (1,))
    assert phi.apply(w).f == (Fraction(0),)


def test_apply_additive_both_sides():
    rng = random.Random(19)
    vars = B222.chart.names
    x_poly = MultiPoly.var(vars, "x1")
    one = MultiPoly.const(vars, 1)
    zero = MultiPoly.zero(vars)
    phi = DVBMorphism(
        B222,
        B222,
        PolyMatrix(vars, ((one, x_poly), (zero, one))),
        PolyMatrix(vars, ((one, zero), (x_poly, one))),
        PolyMatrix(vars, ((one, zero), (zero, one))),
        tuple(
            tuple((x_poly if (g + a) % 2 else one, zero) for a in range(2))
            for g in range(2)
        ),
    )
    for _ in range(40):
        x = rand_tuple(rng, 2)
        e = rand_tuple(rng, 2)
        f = rand_tuple(rng, 2)
        u = B222.element(x, rand_tuple(rng, 2), rand_tuple(rng, 2), e)
        v = B222.element(x, rand_tuple(rng, 2), rand_tuple(rng, 2), e)
        assert phi.apply(fiber_add("right", u, v)) == fiber_add(
            "right", phi.apply(u), phi.apply(v)
        )
        s = B222.element(x, f, rand_tuple(rng, 2), rand_tuple(rng, 2))
        t = B222.element(x, f, rand_tuple(rng, 2), rand_tuple(rng, 2))
        assert phi.apply(fiber_add("left", s, t)) == fiber_add(
            "left", phi.apply(s), phi.apply(t)
        )
        r = rand_rat(rng)
        assert phi.apply(fiber_scale("right", r, u)) == fiber_scale(
            "right", r, phi.apply(u)
        )
        assert phi.apply(fiber_scale("left", r, s)) == fiber_scale(
            "left", r, phi.apply(s)
        )


def test_compose_scalar_blocks():
    phi = scalar_morphism(2, 3, 5, 7)
    comp = compose_morphisms(phi, phi)
    point = (rat(0),)
    fm = comp.at(point)
    assert fm.l == ((4,),) and fm.c == ((9,),) and fm.r == ((25,),)
    assert fm.psi == (((Fraction(91),),),)


def test_compose_matches_pointwise_application():
    phi = scalar_morphism(2, 3, 5, 7)
    psi = scalar_morphism(1, 2, 3, 4)
    comp = compose_morphisms(psi, phi)
    v = B.element((1,), ("1/2",), ("2/3",), ("3/5",))
    assert comp.apply(v) == psi.apply(phi.apply(v))


def test_compose_identity_neutral():
    phi = scalar_morphism(2, 3, 5, 7)
    ident = identity_morphism(B)
    assert compose_morphisms(phi, ident) == phi
    assert compose_morphisms(ident, phi) == phi


def test_compose_associative():
    a = scalar_morphism(2, 3, 5, 7)
    b = scalar_morphism(1, 2, 3, 4)
    c = scalar_morphism(3, 1, 2, 5)
    assert compose_morphisms(a, compose_morphisms(b, c)) == compose_morphisms(
        compose_morphisms(a, b), c
    )


def test_invert_scalar_blocks():
    phi = scalar_morphism(2, 3, 5, 7)
    fm = invert_morphism(phi).at((rat(0),))
    assert fm.l == ((rat("1/2"),),)
    assert fm.c == ((rat("1/3"),),)
    assert fm.r == ((rat("1/5"),),)
    assert fm.psi == (((rat("-7/30"),),),)


def test_invert_roundtrip():
    phi = scalar_morphism(2, 3, 5, 7)
    inv = invert_morphism(phi)
    v = B.element((2,), ("1/2",), ("2/3",), ("3/5",))
    assert inv.apply(phi.apply(v)) == v
    assert phi.apply(inv.apply(v)) == v


def test_invert_poly_matches_pointwise():
    vars = B222.chart.names
    x_poly = MultiPoly.var(vars, "x1")
    one = MultiPoly.const(vars, 1)
    zero = MultiPoly.zero(vars)
    phi = DVBMorphism(
        B222,
        B222,
        PolyMatrix(vars, ((one, x_poly), (zero, one))),
        PolyMatrix(vars, ((one, zero), (x_poly * x_poly, one))),
        PolyMatrix.identity(vars, 2),
        psi_zero(vars, 2, 2, 2),
    )
    inv_poly = invert_morphism_poly(phi)
    inv_point = invert_morphism(phi)
    for x in ((rat(0), rat(1)), (rat("1/2"), rat(-3))):
        assert inv_poly.at(x) == inv_point.at(x)
    assert compose_morphisms(inv_poly, phi) == identity_morphism(B222)


def test_flip_morphism_transports_apply():
    phi = scalar_morphism(2, 3, 5, 7)
    v = B.element((1,), ("1/2",), ("2/3",), ("3/5",))
    assert flip(phi).apply(flip(v)) == flip(phi.apply(v))
    assert flip(flip(phi)) == phi


def test_zero_rank_core():
    degenerate = DecomposedDVB(CHART, 1, 0, 1)
    u = degenerate.element((0,), (1,), (), (2,))
    v = degenerate.element((0,), (3,), (), (2,))
    assert fiber_add("right", u, v).f == (Fraction(4),)
    ident = identity_morphism(degenerate)
    assert ident.apply(u) == u
