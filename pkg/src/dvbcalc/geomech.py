"""Geometric mechanics on decomposed tangent and cotangent shells.

Everything here lives over a vector bundle E with polynomial data: vector
fields and one-forms on the total space (coordinates (x, e), fiber names
e1..eN), bivectors and linear 2-forms, vertical and complete lifts, linear
sections and their duals, linear connections with their dual, metric, and
symmetry characterizations.

The recurring theme is that fiberwise-linear objects on E are exactly the
ones whose associated maps between the tangent shell K(TM, E, E) and the
cotangent shell K(E*, T*M, E) respect both bundle structures.  Shape
predicates are decided exactly on polynomial degrees; structure predicates
are sampled at rational points with a seeded generator and checked exactly.

Connection conventions: the splitting sends (x | xdot | edot | e) to
(x | xdot | edot + Gamma(xdot, e) | e) with a plus sign, and the dual
connection is produced by the duality machinery (flip, right dual, invert),
which lands on the negated transpose of Gamma.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import (
    Chart,
    DecomposedDVB,
    DVBElement,
    DVBMorphism,
    FiberMismatchError,
    VectorBundle,
    compose_morphisms,
    cotangent_prolongation,
    fiber_add,
    fiber_scale,
    invert_morphism_poly,
    psi_zero,
    tangent_prolongation,
)
from .duality import (
    dual_label,
    pair_r,
    right_dual,
    right_dual_morphism,
    right_dual_morphism_poly,
)
from .forms import DifferentialForm, make_form
from .ring import (
    MultiPoly,
    Point,
    PolyMatrix,
    dot,
    mat_vec_frac,
    rat,
)


class SingularMetricError(ArithmeticError):
    """The metric block is singular at a point where it must be inverted."""


def fiber_var_names(rank: int) -> tuple[str, ...]:
    return tuple(f"e{a + 1}" for a in range(rank))


def total_space_vars(vb: VectorBundle) -> tuple[str, ...]:
    """Coordinates (x..., e...) of the total space of the bundle."""
    fiber = fiber_var_names(vb.rank)
    clash = set(vb.chart.names) & set(fiber)
    if clash:
        raise ValueError(f"chart names collide with fiber names: {sorted(clash)}")
    return vb.chart.names + fiber


def _fiber_degrees(poly: MultiPoly, n_base: int) -> set[int]:
    return {sum(exps[n_base:]) for exps, _ in poly.terms}


def _eval_at(poly: MultiPoly, x: Point, e: Sequence[Fraction]) -> Fraction:
    return poly.eval(tuple(x) + tuple(e))


def _rand(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-7, 7), rng.randint(1, 7))


def _rand_tuple(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(_rand(rng) for _ in range(n))


# ---------------------------------------------------------------------------
# Vector fields on the total space

@dataclass(frozen=True)
class GeneralVectorField:
    """Vector field on the total space: base and fiber components in (x, e)."""

    bundle: VectorBundle
    base: tuple[MultiPoly, ...]
    vert: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        vars = total_space_vars(self.bundle)
        if len(self.base) != self.bundle.chart.dim:
            raise ValueError("need one base component per chart coordinate")
        if len(self.vert) != self.bundle.rank:
            raise ValueError("need one vertical component per fiber coordinate")
        for p in self.base + self.vert:
            if p.vars != vars:
                raise ValueError("components must use the total space variables")

    def value_at(self, x: Point, e: Sequence[Fraction]):
        xdot = tuple(_eval_at(p, x, e) for p in self.base)
        edot = tuple(_eval_at(p, x, e) for p in self.vert)
        return xdot, edot

    def tangent_image(self, x, e) -> DVBElement:
        """The field evaluated at (x, e) as a tangent shell element."""
        shell = tangent_prolongation(self.bundle)
        x = self.bundle.chart.point(x)
        e = tuple(rat(v) for v in e)
        xdot, edot = self.value_at(x, e)
        return shell.element(x, xdot, edot, e)


@dataclass(frozen=True)
class LinearVectorField:
    """Degree-zero field: e-free base, fiber matrix acting linearly on e."""

    bundle: VectorBundle
    base: tuple[MultiPoly, ...]
    fiber: PolyMatrix

    def __post_init__(self) -> None:
        names = self.bundle.chart.names
        if len(self.base) != self.bundle.chart.dim:
            raise ValueError("need one base component per chart coordinate")
        for p in self.base:
            if p.vars != names:
                raise ValueError("base components depend on the chart only")
        if self.fiber.vars != names:
            raise ValueError("fiber matrix depends on the chart only")
        if (self.fiber.rows, self.fiber.cols) != (self.bundle.rank, self.bundle.rank):
            raise ValueError("fiber matrix must be rank x rank")

    def as_general(self) -> GeneralVectorField:
        vars = total_space_vars(self.bundle)
        base = tuple(p.extend(vars) for p in self.base)
        evars = [MultiPoly.var(vars, name) for name in fiber_var_names(self.bundle.rank)]
        vert = []
        for b in range(self.bundle.rank):
            acc = MultiPoly.zero(vars)
            for a in range(self.bundle.rank):
                acc = acc + self.fiber.entries[b][a].extend(vars) * evars[a]
            vert.append(acc)
        return GeneralVectorField(self.bundle, base, tuple(vert))


def is_degree_zero(field: GeneralVectorField) -> bool:
    """Exact shape test: base e-free, vertical part homogeneous of e-degree 1."""
    n = field.bundle.chart.dim
    for p in field.base:
        if _fiber_degrees(p, n) - {0}:
            return False
    for p in field.vert:
        if _fiber_degrees(p, n) - {1}:
            return False
    return True


def vf_evaluation_on_cotangent(field: GeneralVectorField, w: DVBElement) -> Fraction:
    """Value of the field's momentum function at a cotangent shell point.

    For w = (x | phi | p | e) the value is p.base(x, e) + phi.vert(x, e).
    """
    if w.bundle != cotangent_prolongation(field.bundle):
        raise ValueError("argument must live on the cotangent shell of the bundle")
    xdot, edot = field.value_at(w.x, w.e)
    return dot(w.c, xdot) + dot(w.f, edot)


def vf_is_bundle_morphism(
    field: GeneralVectorField, samples: int = 40, seed: int = 0
) -> bool:
    """Sampled test that the field is a bundle morphism into the tangent shell.

    The section e -> (x | base | vert | e) must project to a map on the base
    (base components independent of e) and be additive and homogeneous in e
    with respect to the left structure of the tangent shell.
    """
    rng = random.Random(seed)
    n, k = field.bundle.chart.dim, field.bundle.rank
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        e1, e2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        r = _rand(rng)
        v1 = field.tangent_image(x, e1)
        v2 = field.tangent_image(x, e2)
        if v1.f != v2.f:
            return False
        summed = field.tangent_image(x, tuple(a + b for a, b in zip(e1, e2)))
        try:
            if summed != fiber_add("left", v1, v2):
                return False
        except FiberMismatchError:
            return False
        scaled = field.tangent_image(x, tuple(r * a for a in e1))
        if scaled != fiber_scale("left", r, v1):
            return False
    return True


def vf_linearity_on_cotangent(
    field, samples: int = 40, seed: int = 0
) -> bool:
    """Sampled linearity of the momentum function under both shell structures."""
    if isinstance(field, LinearVectorField):
        field = field.as_general()
    rng = random.Random(seed)
    shell = cotangent_prolongation(field.bundle)
    n, k = field.bundle.chart.dim, field.bundle.rank
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        e, e2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        phi, phi2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        p, p2 = _rand_tuple(rng, n), _rand_tuple(rng, n)
        r = _rand(rng)
        u = shell.element(x, phi, p, e)
        # right structure: shared fiber point e
        v = shell.element(x, phi2, p2, e)
        lhs = vf_evaluation_on_cotangent(field, fiber_add("right", u, v))
        if lhs != vf_evaluation_on_cotangent(field, u) + vf_evaluation_on_cotangent(
            field, v
        ):
            return False
        scaled = vf_evaluation_on_cotangent(field, fiber_scale("right", r, u))
        if scaled != r * vf_evaluation_on_cotangent(field, u):
            return False
        # left structure: shared covector leg phi
        w = shell.element(x, phi, p2, e2)
        lhs = vf_evaluation_on_cotangent(field, fiber_add("left", u, w))
        if lhs != vf_evaluation_on_cotangent(field, u) + vf_evaluation_on_cotangent(
            field, w
        ):
            return False
        scaled = vf_evaluation_on_cotangent(field, fiber_scale("left", r, u))
        if scaled != r * vf_evaluation_on_cotangent(field, u):
            return False
    return True


# ---------------------------------------------------------------------------
# One-forms on the total space

@dataclass(frozen=True)
class GeneralOneForm:
    """One-form on the total space: dx and de coefficients in (x, e)."""

    bundle: VectorBundle
    dx_coeffs: tuple[MultiPoly, ...]
    de_coeffs: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        vars = total_space_vars(self.bundle)
        if len(self.dx_coeffs) != self.bundle.chart.dim:
            raise ValueError("need one dx coefficient per chart coordinate")
        if len(self.de_coeffs) != self.bundle.rank:
            raise ValueError("need one de coefficient per fiber coordinate")
        for p in self.dx_coeffs + self.de_coeffs:
            if p.vars != vars:
                raise ValueError("coefficients must use the total space variables")

    def cotangent_image(self, x, e) -> DVBElement:
        """The form at (x, e) as a cotangent shell element."""
        shell = cotangent_prolongation(self.bundle)
        x = self.bundle.chart.point(x)
        e = tuple(rat(v) for v in e)
        p = tuple(_eval_at(c, x, e) for c in self.dx_coeffs)
        phi = tuple(_eval_at(c, x, e) for c in self.de_coeffs)
        return shell.element(x, phi, p, e)


@dataclass(frozen=True)
class LinearOneForm:
    """Fiberwise-linear one-form: theta_a de^a + theta_ia e^a dx^i."""

    bundle: VectorBundle
    theta_a: tuple[MultiPoly, ...]
    theta_ia: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self) -> None:
        names = self.bundle.chart.names
        n, k = self.bundle.chart.dim, self.bundle.rank
        if len(self.theta_a) != k:
            raise ValueError("need one de coefficient per fiber coordinate")
        if len(self.theta_ia) != n or any(len(row) != k for row in self.theta_ia):
            raise ValueError("dx coefficient grid must be chart dim x rank")
        for p in self.theta_a + tuple(q for row in self.theta_ia for q in row):
            if p.vars != names:
                raise ValueError("coefficients depend on the chart only")

    def as_general(self) -> GeneralOneForm:
        vars = total_space_vars(self.bundle)
        evars = [MultiPoly.var(vars, name) for name in fiber_var_names(self.bundle.rank)]
        dx = []
        for i in range(self.bundle.chart.dim):
            acc = MultiPoly.zero(vars)
            for a in range(self.bundle.rank):
                acc = acc + self.theta_ia[i][a].extend(vars) * evars[a]
            dx.append(acc)
        de = tuple(p.extend(vars) for p in self.theta_a)
        return GeneralOneForm(self.bundle, tuple(dx), de)


def is_linear_oneform(form: GeneralOneForm) -> bool:
    """Exact shape test: de coefficients e-free, dx coefficients e-degree 1."""
    n = form.bundle.chart.dim
    for p in form.de_coeffs:
        if _fiber_degrees(p, n) - {0}:
            return False
    for p in form.dx_coeffs:
        if _fiber_degrees(p, n) - {1}:
            return False
    return True


def oneform_evaluation_on_tangent(form: GeneralOneForm, w: DVBElement) -> Fraction:
    """Value of the form's velocity function at a tangent shell point."""
    if w.bundle != tangent_prolongation(form.bundle):
        raise ValueError("argument must live on the tangent shell of the bundle")
    p = tuple(_eval_at(c, w.x, w.e) for c in form.dx_coeffs)
    phi = tuple(_eval_at(c, w.x, w.e) for c in form.de_coeffs)
    return dot(p, w.f) + dot(phi, w.c)


def oneform_is_bundle_morphism(
    form: GeneralOneForm, samples: int = 40, seed: int = 0
) -> bool:
    """Sampled test that e -> form(x, e) is a morphism into the cotangent shell."""
    rng = random.Random(seed)
    n, k = form.bundle.chart.dim, form.bundle.rank
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        e1, e2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        r = _rand(rng)
        w1 = form.cotangent_image(x, e1)
        w2 = form.cotangent_image(x, e2)
        if w1.f != w2.f:
            return False
        summed = form.cotangent_image(x, tuple(a + b for a, b in zip(e1, e2)))
        try:
            if summed != fiber_add("left", w1, w2):
                return False
        except FiberMismatchError:
            return False
        scaled = form.cotangent_image(x, tuple(r * a for a in e1))
        if scaled != fiber_scale("left", r, w1):
            return False
    return True


def oneform_linearity_on_tangent(form, samples: int = 40, seed: int = 0) -> bool:
    """Sampled linearity of the velocity function under both shell structures."""
    if isinstance(form, LinearOneForm):
        form = form.as_general()
    rng = random.Random(seed)
    shell = tangent_prolongation(form.bundle)
    n, k = form.bundle.chart.dim, form.bundle.rank
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        e, e2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        xdot, xdot2 = _rand_tuple(rng, n), _rand_tuple(rng, n)
        edot, edot2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        r = _rand(rng)
        u = shell.element(x, xdot, edot, e)
        v = shell.element(x, xdot2, edot2, e)
        if oneform_evaluation_on_tangent(form, fiber_add("right", u, v)) != (
            oneform_evaluation_on_tangent(form, u)
            + oneform_evaluation_on_tangent(form, v)
        ):
            return False
        if oneform_evaluation_on_tangent(
            form, fiber_scale("right", r, u)
        ) != r * oneform_evaluation_on_tangent(form, u):
            return False
        w = shell.element(x, xdot, edot2, e2)
        if oneform_evaluation_on_tangent(form, fiber_add("left", u, w)) != (
            oneform_evaluation_on_tangent(form, u)
            + oneform_evaluation_on_tangent(form, w)
        ):
            return False
        if oneform_evaluation_on_tangent(
            form, fiber_scale("left", r, u)
        ) != r * oneform_evaluation_on_tangent(form, u):
            return False
    return True


# ---------------------------------------------------------------------------
# Bivectors

@dataclass(frozen=True)
class Bivector:
    """Bivector on the total space in blocks over (x, e) coordinates.

    l_ij is the base-base block, l_ia the mixed block, l_ab the fiber-fiber
    block; the two diagonal blocks must be antisymmetric as polynomials.
    """

    bundle: VectorBundle
    l_ij: PolyMatrix
    l_ia: PolyMatrix
    l_ab: PolyMatrix

    def __post_init__(self) -> None:
        vars = total_space_vars(self.bundle)
        n, k = self.bundle.chart.dim, self.bundle.rank
        shapes = ((self.l_ij, n, n), (self.l_ia, n, k), (self.l_ab, k, k))
        for block, rows, cols in shapes:
            if block.vars != vars:
                raise ValueError("blocks must use the total space variables")
            # a block with no rows cannot store its column count
            if block.rows != rows or (rows > 0 and block.cols != cols):
                raise ValueError("block shape mismatch")
        for block in (self.l_ij, self.l_ab):
            skew = block + block.transpose()
            if any(not p.is_zero for row in skew.entries for p in row):
                raise ValueError("diagonal blocks must be antisymmetric")

    def full_matrix(self) -> PolyMatrix:
        """The (n + rank)-square antisymmetric matrix of all blocks."""
        vars = total_space_vars(self.bundle)
        n, k = self.bundle.chart.dim, self.bundle.rank
        # transpose by explicit indices: an empty mixed block has no rows to
        # transpose but still contributes k empty rows
        minus_t = PolyMatrix.build(
            vars, k, n, lambda a, i: -self.l_ia.entries[i][a]
        )
        rows = []
        for i in range(n):
            rows.append(tuple(self.l_ij.entries[i]) + tuple(self.l_ia.entries[i]))
        for a in range(k):
            rows.append(tuple(minus_t.entries[a]) + tuple(self.l_ab.entries[a]))
        return PolyMatrix(vars, tuple(rows))


def lambda_sharp(biv: Bivector):
    """Contraction map from the cotangent shell to the tangent shell.

    A covector (p, phi) at (x, e) goes to the tangent vector with
    xdot = l_ij p + l_ia phi and edot = -l_ia^T p + l_ab phi.
    """
    cot = cotangent_prolongation(biv.bundle)
    tan = tangent_prolongation(biv.bundle)
    vars = total_space_vars(biv.bundle)
    n, k = biv.bundle.chart.dim, biv.bundle.rank
    minus_t = PolyMatrix.build(vars, k, n, lambda a, i: -biv.l_ia.entries[i][a])

    def apply(w: DVBElement) -> DVBElement:
        if w.bundle != cot:
            raise ValueError("argument must live on the cotangent shell")
        point = tuple(w.x) + tuple(w.e)
        p, phi = w.c, w.f
        lij = biv.l_ij.eval_at(point)
        lia = biv.l_ia.eval_at(point)
        lab = biv.l_ab.eval_at(point)
        mia = minus_t.eval_at(point)
        xdot = tuple(
            u + v for u, v in zip(mat_vec_frac(lij, p), mat_vec_frac(lia, phi))
        )
        edot = tuple(
            u + v for u, v in zip(mat_vec_frac(mia, p), mat_vec_frac(lab, phi))
        )
        return tan.element(w.x, xdot, edot, w.e)

    return apply


def bivector_linear_shape(biv: Bivector) -> bool:
    """Exact shape of a fiberwise-linear bivector.

    The base-base block vanishes, the mixed block is e-free, and the
    fiber-fiber block is homogeneous of e-degree 1.
    """
    n = biv.bundle.chart.dim
    for row in biv.l_ij.entries:
        if any(not p.is_zero for p in row):
            return False
    for row in biv.l_ia.entries:
        for p in row:
            if _fiber_degrees(p, n) - {0}:
                return False
    for row in biv.l_ab.entries:
        for p in row:
            if _fiber_degrees(p, n) - {1}:
                return False
    return True


def is_linear_poisson(biv: Bivector, samples: int = 40, seed: int = 0) -> bool:
    """Sampled test that the contraction map respects both shell structures."""
    rng = random.Random(seed)
    sharp = lambda_sharp(biv)
    cot = cotangent_prolongation(biv.bundle)
    n, k = biv.bundle.chart.dim, biv.bundle.rank
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        e, e2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        phi, phi2 = _rand_tuple(rng, k), _rand_tuple(rng, k)
        p, p2 = _rand_tuple(rng, n), _rand_tuple(rng, n)
        r = _rand(rng)
        u = cot.element(x, phi, p, e)
        v = cot.element(x, phi2, p2, e)
        try:
            if sharp(fiber_add("right", u, v)) != fiber_add(
                "right", sharp(u), sharp(v)
            ):
                return False
            if sharp(fiber_scale("right", r, u)) != fiber_scale("right", r, sharp(u)):
                return False
            w = cot.element(x, phi, p2, e2)
            if sharp(fiber_add("left", u, w)) != fiber_add("left", sharp(u), sharp(w)):
                return False
            if sharp(fiber_scale("left", r, u)) != fiber_scale("left", r, sharp(u)):
                return False
        except FiberMismatchError:
            return False
    return True


def check_jacobi(biv: Bivector, points: Sequence[Sequence]) -> bool:
    """Schouten self-bracket evaluated at total space points; True iff zero.

    Each point lists all (x..., e...) coordinates.  The bracket components
    are cyclic sums of P^{su} d_s P^{vw} over the full block matrix P.
    """
    full = biv.full_matrix()
    vars = full.vars
    m = len(vars)
    partials = [
        [[full.entries[u][v].partial(vars[s]) for v in range(m)] for u in range(m)]
        for s in range(m)
    ]
    for raw in points:
        point = tuple(rat(c) for c in raw)
        p_at = full.eval_at(point)
        d_at = [
            [[partials[s][u][v].eval(point) for v in range(m)] for u in range(m)]
            for s in range(m)
        ]
        for u in range(m):
            for v in range(u + 1, m):
                for w in range(v + 1, m):
                    total = Fraction(0)
                    for s in range(m):
                        total += (
                            p_at[s][u] * d_at[s][v][w]
                            + p_at[s][v] * d_at[s][w][u]
                            + p_at[s][w] * d_at[s][u][v]
                        )
                    if total != 0:
                        return False
    return True


# ---------------------------------------------------------------------------
# Linear two-forms

@dataclass(frozen=True)
class LinearTwoForm:
    """Fiberwise-linear 2-form: (omega_ija e^a) dx^i^dx^j / 2 + omega_ia dx^i^de^a.

    omega_ija is antisymmetric in (i, j) as an exact polynomial identity; all
    coefficients depend on the chart only.
    """

    bundle: VectorBundle
    omega_ija: tuple[tuple[tuple[MultiPoly, ...], ...], ...]
    omega_ia: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self) -> None:
        names = self.bundle.chart.names
        n, k = self.bundle.chart.dim, self.bundle.rank
        if len(self.omega_ija) != n or any(
            len(plane) != n or any(len(row) != k for row in plane)
            for plane in self.omega_ija
        ):
            raise ValueError("three-index grid must be n x n x rank")
        if len(self.omega_ia) != n or any(len(row) != k for row in self.omega_ia):
            raise ValueError("mixed grid must be n x rank")
        for i in range(n):
            for j in range(n):
                for a in range(k):
                    p = self.omega_ija[i][j][a]
                    if p.vars != names:
                        raise ValueError("coefficients depend on the chart only")
                    if not (p + self.omega_ija[j][i][a]).is_zero:
                        raise ValueError("three-index grid must be antisymmetric in ij")
        for row in self.omega_ia:
            for p in row:
                if p.vars != names:
                    raise ValueError("coefficients depend on the chart only")

    def as_form(self) -> DifferentialForm:
        """The assembled 2-form over the total space variables."""
        vars = total_space_vars(self.bundle)
        n, k = self.bundle.chart.dim, self.bundle.rank
        comps = {}
        evars = [MultiPoly.var(vars, name) for name in fiber_var_names(k)]
        for i in range(n):
            for j in range(i + 1, n):
                acc = MultiPoly.zero(vars)
                for a in range(k):
                    acc = acc + self.omega_ija[i][j][a].extend(vars) * evars[a]
                comps[(i, j)] = acc
        for i in range(n):
            for a in range(k):
                comps[(i, n + a)] = self.omega_ia[i][a].extend(vars)
        return make_form(vars, 2, comps)


def omega_flat(form: LinearTwoForm) -> DVBMorphism:
    """Insertion map from the tangent shell to the cotangent shell.

    Blocks read off the coefficients: the covector legs are
    phi_b = omega_ib xdot^i and p_j = omega_ija e^a xdot^i - omega_ja edot^a,
    and the fiber point passes through unchanged.
    """
    vb = form.bundle
    names = vb.chart.names
    n, k = vb.chart.dim, vb.rank
    phi_l = PolyMatrix(
        names,
        tuple(tuple(form.omega_ia[i][b] for i in range(n)) for b in range(k)),
    )
    phi_c = PolyMatrix(
        names,
        tuple(tuple(-form.omega_ia[j][a] for a in range(k)) for j in range(n)),
    )
    psi = tuple(
        tuple(tuple(form.omega_ija[i][j][a] for i in range(n)) for a in range(k))
        for j in range(n)
    )
    return DVBMorphism(
        tangent_prolongation(vb),
        cotangent_prolongation(vb),
        phi_l,
        phi_c,
        PolyMatrix.identity(names, k),
        psi,
    )


def is_closed(form: LinearTwoForm) -> bool:
    """Exact closedness identity on the coefficients."""
    n, k = form.bundle.chart.dim, form.bundle.rank
    names = form.bundle.chart.names
    for i in range(n):
        for j in range(n):
            for a in range(k):
                want = form.omega_ia[i][a].partial(names[j]) - form.omega_ia[j][
                    a
                ].partial(names[i])
                if form.omega_ija[i][j][a] != want:
                    return False
    return True


def closedness_via_exterior(form: LinearTwoForm) -> bool:
    """Closedness decided by the formal exterior derivative of the full form."""
    return form.as_form().d().is_zero


def omega_c_pullback(form: LinearTwoForm) -> LinearTwoForm:
    """Pull the canonical base symplectic form back through the core leg.

    The core leg sends (x, e) to the base covector p_i = -omega_ia e^a; the
    pullback of sum dp_i^dx^i regroups into a linear 2-form, which equals
    the input exactly when the input is closed.
    """
    vb = form.bundle
    names = vb.chart.names
    n, k = vb.chart.dim, vb.rank
    pvars = tuple(names) + tuple(f"p{i + 1}" for i in range(n))
    theta = DifferentialForm.zero(pvars, 1)
    for i in range(n):
        theta = theta + make_form(
            pvars, 1, {(i,): MultiPoly.var(pvars, f"p{i + 1}")}
        )
    omega_base = theta.d()

    source = total_space_vars(vb)
    evars = [MultiPoly.var(source, name) for name in fiber_var_names(k)]
    images = [MultiPoly.var(source, name) for name in names]
    for i in range(n):
        acc = MultiPoly.zero(source)
        for a in range(k):
            acc = acc - form.omega_ia[i][a].extend(source) * evars[a]
        images.append(acc)
    pulled = omega_base.pullback(source, tuple(images))

    new_ija = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for a in range(k):
                # the dx^i^dx^j coefficient is e-linear; read off the e^a part
                coeff = pulled.coeff((i, j)).partial(source[n + a])
                row.append(_restrict_to_chart(coeff, names, n))
            plane.append(tuple(row))
        new_ija.append(tuple(plane))
    new_ia = tuple(
        tuple(
            _restrict_to_chart(pulled.coeff((i, n + a)), names, n) for a in range(k)
        )
        for i in range(n)
    )
    return LinearTwoForm(vb, tuple(new_ija), new_ia)


def _restrict_to_chart(poly: MultiPoly, names: tuple[str, ...], n: int) -> MultiPoly:
    if _fiber_degrees(poly, n) - {0}:
        raise ValueError("polynomial still depends on fiber variables")
    return MultiPoly.from_dict(
        names, {exps[:n]: coeff for exps, coeff in poly.terms}
    )


# ---------------------------------------------------------------------------
# Vertical lifts and linear sections

@dataclass(frozen=True)
class CoreSection:
    """A section of the core bundle, one polynomial per core coordinate."""

    chart: Chart
    gamma: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        for p in self.gamma:
            if p.vars != self.chart.names:
                raise ValueError("section components depend on the chart only")

    def value(self, x: Point) -> tuple[Fraction, ...]:
        return tuple(p.eval(x) for p in self.gamma)


def vertical_lift(
    bundle: DecomposedDVB, side: str, section: CoreSection, x, outer
) -> DVBElement:
    """Kernel-valued section through a core section.

    The right lift fills (x | 0 | gamma(x) | e), the left lift fills
    (x | f | gamma(x) | 0); both land in the kernel of the opposite
    projection.
    """
    if section.chart != bundle.chart:
        raise ValueError("section chart differs from the bundle chart")
    if len(section.gamma) != bundle.n_C:
        raise ValueError("section length must match the core rank")
    point = bundle.chart.point(x)
    core = section.value(point)
    if side == "right":
        return bundle.element(point, (0,) * bundle.n_F, core, outer)
    if side == "left":
        return bundle.element(point, outer, core, (0,) * bundle.n_E)
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


@dataclass(frozen=True)
class LinearSection:
    """Linear section of one side projection of a decomposed bundle.

    A left section maps a side point f to (x | f | fiber(x) f | base(x));
    a right section maps e to (x | base(x) | fiber(x) e | e).  The base
    gives the projection onto the opposite side, the fiber matrix feeds
    the core.
    """

    bundle: DecomposedDVB
    side: str
    base: tuple[MultiPoly, ...]
    fiber: PolyMatrix

    def __post_init__(self) -> None:
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        names = self.bundle.chart.names
        base_rank = self.bundle.n_E if self.side == "left" else self.bundle.n_F
        in_rank = self.bundle.n_F if self.side == "left" else self.bundle.n_E
        if len(self.base) != base_rank:
            raise ValueError("base section length must match the opposite side rank")
        for p in self.base:
            if p.vars != names:
                raise ValueError("base section depends on the chart only")
        if self.fiber.vars != names:
            raise ValueError("fiber matrix depends on the chart only")
        if (self.fiber.rows, self.fiber.cols) != (self.bundle.n_C, in_rank):
            raise ValueError("fiber matrix must be core rank x input rank")

    def at(self, x, value) -> DVBElement:
        point = self.bundle.chart.point(x)
        vec = tuple(rat(v) for v in value)
        core = mat_vec_frac(self.fiber.eval_at(point), vec)
        opposite = tuple(p.eval(point) for p in self.base)
        if self.side == "left":
            return self.bundle.element(point, vec, core, opposite)
        return self.bundle.element(point, opposite, core, vec)


def dual_linear_section(section: LinearSection) -> LinearSection:
    """The unique right section of the dual annihilating a left section.

    The base projection is kept and the fiber matrix is the negated
    transpose; the pairing of the two sections vanishes identically.
    """
    if section.side != "left":
        raise ValueError("dualization starts from a left section")
    return LinearSection(
        right_dual(section.bundle),
        "right",
        section.base,
        -section.fiber.transpose(),
    )


def linear_vf_as_section(field: LinearVectorField) -> LinearSection:
    """A degree-zero field as a left section of the flipped tangent shell."""
    shell = tangent_prolongation(field.bundle).flip()
    return LinearSection(shell, "left", field.base, field.fiber)


def complete_tangent_lift(chart: Chart, base: Sequence[MultiPoly]) -> LinearVectorField:
    """Complete lift of a base vector field to its tangent bundle.

    The fiber matrix is the Jacobian of the base components.
    """
    names = chart.names
    base = tuple(base)
    if len(base) != chart.dim:
        raise ValueError("need one component per chart coordinate")
    jac = PolyMatrix(
        names,
        tuple(tuple(p.partial(name) for name in names) for p in base),
    )
    return LinearVectorField(VectorBundle(chart, chart.dim, "TM"), base, jac)


def complete_cotangent_lift(
    chart: Chart, base: Sequence[MultiPoly]
) -> LinearVectorField:
    """Complete lift of a base vector field to its cotangent bundle.

    Same base flow; the fiber matrix is the negated transposed Jacobian.
    """
    lifted = complete_tangent_lift(chart, base)
    return LinearVectorField(
        VectorBundle(chart, chart.dim, "T*M"),
        lifted.base,
        -lifted.fiber.transpose(),
    )


def covector_vector_pairing(cot: DVBElement, tan: DVBElement) -> Fraction:
    """Canonical pairing of cotangent and tangent shell points over one fiber point.

    For (x | phi | p | e) against (x | xdot | edot | e) the value is
    p.xdot + phi.edot; computed through the right dual pairing.
    """
    vb = VectorBundle(tan.bundle.chart, tan.bundle.n_E, tan.bundle.labels[2])
    if tan.bundle != tangent_prolongation(vb) or cot.bundle != cotangent_prolongation(
        vb
    ):
        raise ValueError("arguments are not matching cotangent and tangent points")
    rehomed = DVBElement(right_dual(tan.bundle), cot.x, cot.e, cot.c, cot.f)
    return pair_r(tan, rehomed)


# ---------------------------------------------------------------------------
# Linear connections

@dataclass(frozen=True)
class LinearConnection:
    """Christoffel data Gamma[a][i][b] over the chart: upper, base, lower."""

    bundle: VectorBundle
    gamma: tuple[tuple[tuple[MultiPoly, ...], ...], ...]

    def __post_init__(self) -> None:
        names = self.bundle.chart.names
        n, k = self.bundle.chart.dim, self.bundle.rank
        if len(self.gamma) != k or any(
            len(plane) != n or any(len(row) != k for row in plane)
            for plane in self.gamma
        ):
            raise ValueError("Christoffel grid must be rank x dim x rank")
        for plane in self.gamma:
            for row in plane:
                for p in row:
                    if p.vars != names:
                        raise ValueError("Christoffel data depends on the chart only")


def zero_connection(bundle: VectorBundle) -> LinearConnection:
    z = MultiPoly.zero(bundle.chart.names)
    n, k = bundle.chart.dim, bundle.rank
    return LinearConnection(
        bundle,
        tuple(tuple(tuple(z for _ in range(k)) for _ in range(n)) for _ in range(k)),
    )


def connection_splitting(conn: LinearConnection) -> DVBMorphism:
    """Splitting morphism on the tangent shell with identity induced maps.

    Sends (x | xdot | edot | e) to (x | xdot | edot + Gamma(xdot, e) | e);
    the bilinear block holds the Christoffel data and every linear block is
    the identity.
    """
    vb = conn.bundle
    names = vb.chart.names
    shell = tangent_prolongation(vb)
    psi = tuple(
        tuple(
            tuple(conn.gamma[a][i][b] for i in range(vb.chart.dim))
            for b in range(vb.rank)
        )
        for a in range(vb.rank)
    )
    return DVBMorphism(
        shell,
        shell,
        PolyMatrix.identity(names, vb.chart.dim),
        PolyMatrix.identity(names, vb.rank),
        PolyMatrix.identity(names, vb.rank),
        psi,
    )


def dual_connection(conn: LinearConnection) -> LinearConnection:
    """Connection induced on the dual bundle through the duality machinery.

    The splitting is flipped, dualized along the right structure, and
    inverted; the resulting bilinear block is read back as Christoffel data.
    The outcome is the negated transpose in the two fiber indices, which is
    exactly what the derivative of the fiber pairing demands.
    """
    split = connection_splitting(conn)
    dual_split = invert_morphism_poly(right_dual_morphism_poly(split.flip()))
    vb = conn.bundle
    gamma_star = tuple(
        tuple(
            tuple(dual_split.psi[big_a][g][i] for g in range(vb.rank))
            for i in range(vb.chart.dim)
        )
        for big_a in range(vb.rank)
    )
    return LinearConnection(
        VectorBundle(vb.chart, vb.rank, dual_label(vb.label)), gamma_star
    )


# ---------------------------------------------------------------------------
# Metric connections

@dataclass(frozen=True)
class Metric:
    """Symmetric fiber metric as a polynomial matrix over the chart."""

    bundle: VectorBundle
    g: PolyMatrix

    def __post_init__(self) -> None:
        if self.g.vars != self.bundle.chart.names:
            raise ValueError("metric depends on the chart only")
        if (self.g.rows, self.g.cols) != (self.bundle.rank, self.bundle.rank):
            raise ValueError("metric must be rank x rank")
        diff = self.g + (-self.g.transpose())
        if any(not p.is_zero for row in diff.entries for p in row):
            raise ValueError("metric must be symmetric")


def tangent_metric_morphism(metric: Metric) -> DVBMorphism:
    """Tangent of the metric map: shell morphism with derivative bilinear block."""
    vb = metric.bundle
    names = vb.chart.names
    n, k = vb.chart.dim, vb.rank
    psi = tuple(
        tuple(
            tuple(metric.g.entries[a][b].partial(names[i]) for i in range(n))
            for b in range(k)
        )
        for a in range(k)
    )
    return DVBMorphism(
        tangent_prolongation(vb),
        tangent_prolongation(VectorBundle(vb.chart, k, dual_label(vb.label))),
        PolyMatrix.identity(names, n),
        metric.g,
        metric.g,
        psi,
    )


def metric_pair_morphism(metric: Metric) -> DVBMorphism:
    """Shell morphism applying the metric on core and side, identity on base."""
    vb = metric.bundle
    names = vb.chart.names
    return DVBMorphism(
        tangent_prolongation(vb),
        tangent_prolongation(VectorBundle(vb.chart, vb.rank, dual_label(vb.label))),
        PolyMatrix.identity(names, vb.chart.dim),
        metric.g,
        metric.g,
        psi_zero(names, vb.rank, vb.rank, vb.chart.dim),
    )


def is_metric_connection(
    conn: LinearConnection, metric: Metric, samples: int = 8, seed: int = 0
) -> bool:
    """Sampled commutation of the splitting with the metric shell maps.

    Compares (pairing map after splitting) with (dual splitting after
    tangent metric map) on sampled tangent shell elements; the metric must
    be nonsingular at every sampled base point.
    """
    if conn.bundle != metric.bundle:
        raise ValueError("connection and metric live on different bundles")
    lhs = compose_morphisms(metric_pair_morphism(metric), connection_splitting(conn))
    rhs = compose_morphisms(
        connection_splitting(dual_connection(conn)), tangent_metric_morphism(metric)
    )
    det = metric.g.det()
    rng = random.Random(seed)
    n, k = conn.bundle.chart.dim, conn.bundle.rank
    shell = tangent_prolongation(conn.bundle)
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        if det.eval(x) == 0:
            raise SingularMetricError(f"metric is singular at {x}")
        v = shell.element(x, _rand_tuple(rng, n), _rand_tuple(rng, k), _rand_tuple(rng, k))
        if lhs.apply(v) != rhs.apply(v):
            return False
    return True


def metric_identity(conn: LinearConnection, metric: Metric) -> bool:
    """Exact polynomial form of metric compatibility.

    d_i g_ab = Gamma^c_ia g_cb + Gamma^c_ib g_ac for all indices.
    """
    if conn.bundle != metric.bundle:
        raise ValueError("connection and metric live on different bundles")
    names = conn.bundle.chart.names
    n, k = conn.bundle.chart.dim, conn.bundle.rank
    g = metric.g.entries
    for i in range(n):
        for a in range(k):
            for b in range(k):
                want = MultiPoly.zero(names)
                for c in range(k):
                    want = want + conn.gamma[c][i][a] * g[c][b]
                    want = want + conn.gamma[c][i][b] * g[a][c]
                if g[a][b].partial(names[i]) != want:
                    return False
    return True


# ---------------------------------------------------------------------------
# Symmetry of connections on the tangent bundle

def kappa_triple(bundle: DecomposedDVB) -> DVBMorphism:
    """Side-exchange morphism onto the flipped bundle; needs equal side ranks.

    Identity on all stored slots: the image of (x | f | c | e) is the point
    of the flipped bundle with the same tuples, which exchanges the roles of
    the two side legs.
    """
    if bundle.n_F != bundle.n_E:
        raise ValueError("side exchange needs equal side ranks")
    names = bundle.chart.names
    return DVBMorphism(
        bundle,
        bundle.flip(),
        PolyMatrix.identity(names, bundle.n_F),
        PolyMatrix.identity(names, bundle.n_C),
        PolyMatrix.identity(names, bundle.n_E),
        psi_zero(names, bundle.n_C, bundle.n_E, bundle.n_F),
    )


def kappa_M(chart: Chart) -> DVBMorphism:
    """Side exchange on the double tangent shell of a chart."""
    return kappa_triple(tangent_prolongation(VectorBundle(chart, chart.dim, "TM")))


def alpha_M(chart: Chart):
    """Right dual of the double tangent side exchange.

    Runs from the tangent-of-cotangent shell to the cotangent-of-tangent
    shell; with identity exchange blocks the dual blocks are identities too,
    so the action only rewires which slot means what.
    """
    return right_dual_morphism(kappa_M(chart))


def is_symmetric_connection(
    conn: LinearConnection, samples: int = 20, seed: int = 0
) -> bool:
    """Symmetry of a tangent bundle connection, by diagram and by coordinates.

    The diagram path samples the side exchange conjugation of the splitting,
    always including the side basis pairs so any asymmetric Christoffel entry
    is certain to register.  The coordinate path compares Gamma^a_ib with
    Gamma^a_bi exactly.  The two must agree.
    """
    vb = conn.bundle
    n = vb.chart.dim
    if vb.rank != n:
        raise ValueError("symmetry needs the bundle ranks to match the chart")
    names = vb.chart.names
    exact = all(
        conn.gamma[a][i][b] == conn.gamma[a][b][i]
        for a in range(vb.rank)
        for i in range(n)
        for b in range(n)
    )

    split = connection_splitting(conn)
    shell = split.source
    exchange = kappa_triple(shell)
    lhs = compose_morphisms(exchange, split)
    rhs = compose_morphisms(split.flip(), exchange)
    rng = random.Random(seed)

    def agree_at(v: DVBElement) -> bool:
        return lhs.apply(v) == rhs.apply(v)

    sampled = True
    for _ in range(2):
        x = _rand_tuple(rng, n)
        for i in range(n):
            for j in range(n):
                unit_f = tuple(Fraction(int(t == i)) for t in range(n))
                unit_e = tuple(Fraction(int(t == j)) for t in range(n))
                v = shell.element(x, unit_f, (0,) * n, unit_e)
                if not agree_at(v):
                    sampled = False
    for _ in range(samples):
        x = _rand_tuple(rng, n)
        v = shell.element(x, _rand_tuple(rng, n), _rand_tuple(rng, n), _rand_tuple(rng, n))
        if not agree_at(v):
            sampled = False
    if sampled != exact:
        raise RuntimeError("diagram and coordinate symmetry tests disagree")
    return exact


# ---------------------------------------------------------------------------
# Lagrangian criterion for the dual horizontal distribution

@lru_cache(maxsize=None)
def lifted_symplectic_form(names: tuple[str, ...]) -> DifferentialForm:
    """Tangent lift of the canonical 2-form of the cotangent space over a chart.

    Variables run (x..., p..., x..._dot, p..._dot).  Built from the formal
    lift of the tautological 1-form, never written out by hand.
    """
    n = len(names)
    base_vars = tuple(names) + tuple(f"p{i + 1}" for i in range(n))
    theta = DifferentialForm.zero(base_vars, 1)
    for i in range(n):
        theta = theta + make_form(
            base_vars, 1, {(i,): MultiPoly.var(base_vars, f"p{i + 1}")}
        )
    return theta.d().tangent_lift()


def horizontal_lagrangian_check(
    conn: LinearConnection,
    points: Sequence[tuple[Sequence, Sequence]] | None = None,
    samples: int = 5,
    seed: int = 0,
) -> bool:
    """Isotropy of the dual connection's horizontal spaces at sampled covectors.

    At each (x, p) the horizontal space of the dual connection is spanned by
    one vector per base direction with the covariant part forced to zero.
    The lifted canonical 2-form is evaluated on every pair through the mixed
    insertion channel; all values vanish exactly when the connection is
    symmetric.
    """
    vb = conn.bundle
    n = vb.chart.dim
    if vb.rank != n:
        raise ValueError("the check needs the bundle ranks to match the chart")
    omega = lifted_symplectic_form(vb.chart.names)
    if points is None:
        rng = random.Random(seed)
        points = [
            (_rand_tuple(rng, n), tuple(Fraction(rng.randint(1, 7)) for _ in range(n)))
            for _ in range(samples)
        ]
    zeros = (Fraction(0),) * n
    for raw_x, raw_p in points:
        x = vb.chart.point(raw_x)
        p = tuple(rat(v) for v in raw_p)
        spot = x + p + zeros + zeros
        basis = []
        for i in range(n):
            xdot = tuple(Fraction(int(t == i)) for t in range(n))
            pdot = tuple(
                sum(
                    (conn.gamma[b][i][a].eval(x) * p[b] for b in range(n)),
                    Fraction(0),
                )
                for a in range(n)
            )
            basis.append((xdot, pdot))
        for i in range(n):
            for j in range(i + 1, n):
                u = basis[i][0] + basis[i][1] + zeros + zeros
                v = zeros + zeros + basis[j][0] + basis[j][1]
                if omega.evaluate(spot, (u, v)) != 0:
                    return False
    return True
