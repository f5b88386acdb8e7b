"""Scenario files and seeded random scenario generation for the harness.

A scenario bundles everything one run of the property suites needs: a
decomposed double bundle over a chart, an optional block endomorphism of it,
optional geometry records living on its right side leg, and a sampling plan
(seed, sample count, coordinate bound).  The file format is JSON.  A
polynomial literal is a list of terms `{"coeff": "p/q", "exps": [k1, ...]}`
over the variable list its section declares; coefficients are strings or
integers, never floats.  Chart coordinates are always x1..xn and fiber
coordinates e1..ek, so a scenario only declares dimensions.

Two error channels: ScenarioParseError for structural problems (bad JSON,
malformed literals, ragged grids), InconsistentScenarioError for well formed
data whose ranks or shape constraints do not fit together (for example a
bivector block that is not antisymmetric).

Random generation is deterministic for a fixed seed and flag set.  Blocks
that must be invertible are built as identity plus a strictly triangular
part, so their determinant is exactly one at every point.
"""

from __future__ import annotations

import json
import random
import zlib
from dataclasses import dataclass, replace
from fractions import Fraction

from .core import Chart, DecomposedDVB, DVBMorphism, VectorBundle
from .geomech import (
    Bivector,
    CoreSection,
    GeneralOneForm,
    GeneralVectorField,
    LinearConnection,
    LinearOneForm,
    LinearTwoForm,
    LinearVectorField,
    Metric,
    total_space_vars,
)
from .ring import MultiPoly, PolyMatrix


class ScenarioParseError(ValueError):
    """The scenario text or a literal inside it is structurally malformed."""


class InconsistentScenarioError(ValueError):
    """The scenario parses but its sections do not fit together."""


def derive_seed(master: int, tag: str) -> int:
    """Stable sub-seed for one named use of the master seed."""
    return zlib.crc32(tag.encode("utf-8"), master & 0xFFFFFFFF)


# ---------------------------------------------------------------------------
# The scenario record

@dataclass(frozen=True)
class Scenario:
    bundle: DecomposedDVB
    morphism: DVBMorphism | None = None
    vector_field: GeneralVectorField | None = None
    one_form: GeneralOneForm | None = None
    bivector: Bivector | None = None
    two_form: LinearTwoForm | None = None
    metric: Metric | None = None
    connection: LinearConnection | None = None
    core_section: CoreSection | None = None
    seed: int = 0
    samples: int = 100
    bound: int = 7

    @property
    def chart(self) -> Chart:
        return self.bundle.chart

    @property
    def side_bundle(self) -> VectorBundle:
        """The plain vector bundle carried by the right side leg."""
        return VectorBundle(self.chart, self.bundle.n_E, self.bundle.labels[2])

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise InconsistentScenarioError("sample count must be positive")
        if self.bound < 1:
            raise InconsistentScenarioError("coordinate bound must be positive")
        if self.morphism is not None and (
            self.morphism.source != self.bundle or self.morphism.target != self.bundle
        ):
            raise InconsistentScenarioError(
                "morphism must be an endomorphism of the scenario bundle"
            )
        side = self.side_bundle
        for name in ("vector_field", "one_form", "bivector", "two_form", "metric"):
            record = getattr(self, name)
            if record is not None and record.bundle != side:
                raise InconsistentScenarioError(
                    f"{name} lives on {record.bundle}, expected the side leg {side}"
                )
        if self.connection is not None and self.connection.bundle != side:
            raise InconsistentScenarioError(
                "connection does not live on the side leg bundle"
            )
        if self.core_section is not None:
            if self.core_section.chart != self.chart:
                raise InconsistentScenarioError("core section chart differs")
            if len(self.core_section.gamma) != self.bundle.n_C:
                raise InconsistentScenarioError(
                    "core section length differs from the core rank"
                )

    def with_plan(self, seed=None, samples=None, bound=None) -> Scenario:
        return replace(
            self,
            seed=self.seed if seed is None else seed,
            samples=self.samples if samples is None else samples,
            bound=self.bound if bound is None else bound,
        )


# ---------------------------------------------------------------------------
# Parsing

def _need_dict(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ScenarioParseError(f"{where} must be an object")
    return obj


def _need_list(obj, where: str) -> list:
    if not isinstance(obj, list):
        raise ScenarioParseError(f"{where} must be a list")
    return obj


def _need_int(obj, where: str) -> int:
    # bool is an int subclass and must not slip through
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ScenarioParseError(f"{where} must be an integer")
    return obj


def _check_keys(obj: dict, required: tuple[str, ...], optional: tuple[str, ...], where: str) -> None:
    keys = set(obj)
    missing = set(required) - keys
    if missing:
        raise ScenarioParseError(f"{where} is missing keys {sorted(missing)}")
    unknown = keys - set(required) - set(optional)
    if unknown:
        raise ScenarioParseError(f"{where} has unknown keys {sorted(unknown)}")


def _parse_coeff(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ScenarioParseError(
            f"{where}: coefficient must be an integer or a 'p/q' string"
        )
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioParseError(f"{where}: bad coefficient {raw!r}: {exc}") from exc


def parse_poly(obj, vars: tuple[str, ...], where: str) -> MultiPoly:
    """One polynomial literal against a declared variable list."""
    acc: dict[tuple[int, ...], Fraction] = {}
    for pos, term in enumerate(_need_list(obj, where)):
        spot = f"{where}, term {pos}"
        term = _need_dict(term, spot)
        _check_keys(term, ("coeff", "exps"), (), spot)
        coeff = _parse_coeff(term["coeff"], spot)
        exps = _need_list(term["exps"], f"{spot}, exps")
        if len(exps) != len(vars):
            raise ScenarioParseError(
                f"{spot}: {len(exps)} exponents for {len(vars)} variables"
            )
        for k in exps:
            if _need_int(k, f"{spot}, exponent") < 0:
                raise ScenarioParseError(f"{spot}: negative exponent")
        key = tuple(exps)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return MultiPoly.from_dict(vars, acc)


def _parse_poly_vector(obj, vars, where: str) -> tuple[MultiPoly, ...]:
    return tuple(
        parse_poly(p, vars, f"{where}[{i}]") for i, p in enumerate(_need_list(obj, where))
    )


def _parse_poly_matrix(obj, vars, where: str) -> PolyMatrix:
    rows = []
    widths = set()
    for i, row in enumerate(_need_list(obj, where)):
        parsed = _parse_poly_vector(row, vars, f"{where}[{i}]")
        widths.add(len(parsed))
        rows.append(parsed)
    if len(widths) > 1:
        raise ScenarioParseError(f"{where} is ragged")
    return PolyMatrix(tuple(vars), tuple(rows))


def _parse_poly_grid3(obj, vars, where: str):
    return tuple(
        tuple(
            _parse_poly_vector(row, vars, f"{where}[{i}][{j}]")
            for j, row in enumerate(_need_list(plane, f"{where}[{i}]"))
        )
        for i, plane in enumerate(_need_list(obj, where))
    )


def _build(section: str, ctor, *args):
    """Constructor ValueErrors become scenario inconsistencies."""
    try:
        return ctor(*args)
    except InconsistentScenarioError:
        raise
    except ValueError as exc:
        raise InconsistentScenarioError(f"{section}: {exc}") from exc


def scenario_from_obj(obj) -> Scenario:
    top = _need_dict(obj, "scenario")
    _check_keys(
        top,
        ("bundle",),
        (
            "plan",
            "morphism",
            "vector_field",
            "one_form",
            "bivector",
            "two_form",
            "metric",
            "connection",
            "core_section",
        ),
        "scenario",
    )

    shape = _need_dict(top["bundle"], "bundle")
    _check_keys(shape, ("n", "n_F", "n_C", "n_E"), ("labels",), "bundle")
    dims = {key: _need_int(shape[key], f"bundle.{key}") for key in ("n", "n_F", "n_C", "n_E")}
    for key, value in dims.items():
        if value < 0:
            raise ScenarioParseError(f"bundle.{key} must be nonnegative")
    labels = ("F", "C", "E")
    if "labels" in shape:
        raw = _need_list(shape["labels"], "bundle.labels")
        if len(raw) != 3 or any(not isinstance(s, str) for s in raw):
            raise ScenarioParseError("bundle.labels must be three strings")
        labels = tuple(raw)
    chart = Chart.of_dim(dims["n"])
    bundle = _build(
        "bundle", DecomposedDVB, chart, dims["n_F"], dims["n_C"], dims["n_E"], labels
    )
    side = VectorBundle(chart, bundle.n_E, labels[2])
    base_vars = chart.names
    shell_vars = total_space_vars(side)

    seed, samples, bound = 0, 100, 7
    if "plan" in top:
        plan = _need_dict(top["plan"], "plan")
        _check_keys(plan, (), ("seed", "samples", "bound"), "plan")
        if "seed" in plan:
            seed = _need_int(plan["seed"], "plan.seed")
        if "samples" in plan:
            samples = _need_int(plan["samples"], "plan.samples")
            if samples < 1:
                raise ScenarioParseError("plan.samples must be positive")
        if "bound" in plan:
            bound = _need_int(plan["bound"], "plan.bound")
            if bound < 1:
                raise ScenarioParseError("plan.bound must be positive")

    sections: dict = {}

    if "morphism" in top:
        sec = _need_dict(top["morphism"], "morphism")
        _check_keys(sec, ("Phi_l", "Phi_c", "Phi_r", "Psi"), (), "morphism")
        sections["morphism"] = _build(
            "morphism",
            DVBMorphism,
            bundle,
            bundle,
            _parse_poly_matrix(sec["Phi_l"], base_vars, "morphism.Phi_l"),
            _parse_poly_matrix(sec["Phi_c"], base_vars, "morphism.Phi_c"),
            _parse_poly_matrix(sec["Phi_r"], base_vars, "morphism.Phi_r"),
            _parse_poly_grid3(sec["Psi"], base_vars, "morphism.Psi"),
        )

    if "vector_field" in top:
        sec = _need_dict(top["vector_field"], "vector_field")
        _check_keys(sec, ("base", "vert"), (), "vector_field")
        sections["vector_field"] = _build(
            "vector_field",
            GeneralVectorField,
            side,
            _parse_poly_vector(sec["base"], shell_vars, "vector_field.base"),
            _parse_poly_vector(sec["vert"], shell_vars, "vector_field.vert"),
        )

    if "one_form" in top:
        sec = _need_dict(top["one_form"], "one_form")
        _check_keys(sec, ("dx", "de"), (), "one_form")
        sections["one_form"] = _build(
            "one_form",
            GeneralOneForm,
            side,
            _parse_poly_vector(sec["dx"], shell_vars, "one_form.dx"),
            _parse_poly_vector(sec["de"], shell_vars, "one_form.de"),
        )

    if "bivector" in top:
        sec = _need_dict(top["bivector"], "bivector")
        _check_keys(sec, ("l_ij", "l_ia", "l_ab"), (), "bivector")
        sections["bivector"] = _build(
            "bivector",
            Bivector,
            side,
            _parse_poly_matrix(sec["l_ij"], shell_vars, "bivector.l_ij"),
            _parse_poly_matrix(sec["l_ia"], shell_vars, "bivector.l_ia"),
            _parse_poly_matrix(sec["l_ab"], shell_vars, "bivector.l_ab"),
        )

    if "two_form" in top:
        sec = _need_dict(top["two_form"], "two_form")
        _check_keys(sec, ("omega_ija", "omega_ia"), (), "two_form")
        ia = _need_list(sec["omega_ia"], "two_form.omega_ia")
        sections["two_form"] = _build(
            "two_form",
            LinearTwoForm,
            side,
            _parse_poly_grid3(sec["omega_ija"], base_vars, "two_form.omega_ija"),
            tuple(
                _parse_poly_vector(row, base_vars, f"two_form.omega_ia[{i}]")
                for i, row in enumerate(ia)
            ),
        )

    if "metric" in top:
        sec = _need_dict(top["metric"], "metric")
        _check_keys(sec, ("g",), (), "metric")
        metric = _build(
            "metric", Metric, side, _parse_poly_matrix(sec["g"], base_vars, "metric.g")
        )
        if metric.g.det().is_zero:
            raise InconsistentScenarioError("metric: determinant vanishes identically")
        sections["metric"] = metric

    if "connection" in top:
        sec = _need_dict(top["connection"], "connection")
        _check_keys(sec, ("gamma",), (), "connection")
        sections["connection"] = _build(
            "connection",
            LinearConnection,
            side,
            _parse_poly_grid3(sec["gamma"], base_vars, "connection.gamma"),
        )

    if "core_section" in top:
        sec = _need_dict(top["core_section"], "core_section")
        _check_keys(sec, ("gamma",), (), "core_section")
        sections["core_section"] = _build(
            "core_section",
            CoreSection,
            chart,
            _parse_poly_vector(sec["gamma"], base_vars, "core_section.gamma"),
        )

    return Scenario(bundle=bundle, seed=seed, samples=samples, bound=bound, **sections)


def scenario_from_text(text: str) -> Scenario:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"invalid JSON: {exc}") from exc
    return scenario_from_obj(obj)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
    return scenario_from_text(text)


# ---------------------------------------------------------------------------
# Serialization

def _poly_obj(p: MultiPoly) -> list:
    return [{"coeff": str(c), "exps": list(e)} for e, c in p.terms]


def _vector_obj(ps) -> list:
    return [_poly_obj(p) for p in ps]


def _matrix_obj(m: PolyMatrix) -> list:
    return [_vector_obj(row) for row in m.entries]


def _grid3_obj(grid) -> list:
    return [[_vector_obj(row) for row in plane] for plane in grid]


def scenario_to_obj(sc: Scenario) -> dict:
    b = sc.bundle
    out: dict = {
        "bundle": {
            "n": b.chart.dim,
            "n_F": b.n_F,
            "n_C": b.n_C,
            "n_E": b.n_E,
            "labels": list(b.labels),
        },
        "plan": {"seed": sc.seed, "samples": sc.samples, "bound": sc.bound},
    }
    if sc.morphism is not None:
        out["morphism"] = {
            "Phi_l": _matrix_obj(sc.morphism.phi_l),
            "Phi_c": _matrix_obj(sc.morphism.phi_c),
            "Phi_r": _matrix_obj(sc.morphism.phi_r),
            "Psi": _grid3_obj(sc.morphism.psi),
        }
    if sc.vector_field is not None:
        out["vector_field"] = {
            "base": _vector_obj(sc.vector_field.base),
            "vert": _vector_obj(sc.vector_field.vert),
        }
    if sc.one_form is not None:
        out["one_form"] = {
            "dx": _vector_obj(sc.one_form.dx_coeffs),
            "de": _vector_obj(sc.one_form.de_coeffs),
        }
    if sc.bivector is not None:
        out["bivector"] = {
            "l_ij": _matrix_obj(sc.bivector.l_ij),
            "l_ia": _matrix_obj(sc.bivector.l_ia),
            "l_ab": _matrix_obj(sc.bivector.l_ab),
        }
    if sc.two_form is not None:
        out["two_form"] = {
            "omega_ija": _grid3_obj(sc.two_form.omega_ija),
            "omega_ia": [_vector_obj(row) for row in sc.two_form.omega_ia],
        }
    if sc.metric is not None:
        out["metric"] = {"g": _matrix_obj(sc.metric.g)}
    if sc.connection is not None:
        out["connection"] = {"gamma": _grid3_obj(sc.connection.gamma)}
    if sc.core_section is not None:
        out["core_section"] = {"gamma": _vector_obj(sc.core_section.gamma)}
    return out


def scenario_to_text(sc: Scenario) -> str:
    return json.dumps(scenario_to_obj(sc), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Seeded random generation

def random_rational(rng: random.Random, bound: int = 7) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_tuple(rng: random.Random, n: int, bound: int = 7) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, bound) for _ in range(n))


def random_poly(rng: random.Random, vars, max_degree: int) -> MultiPoly:
    """A short random polynomial of total degree at most max_degree."""
    vt = tuple(vars)
    acc: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, 2)):
        exps = [0] * len(vt)
        if vt:
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(len(vt))] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, Fraction(0)) + random_rational(rng)
    return MultiPoly.from_dict(vt, acc)


def random_poly_vector(rng, vars, n: int, max_degree: int) -> tuple[MultiPoly, ...]:
    return tuple(random_poly(rng, vars, max_degree) for _ in range(n))


def random_poly_matrix(rng, vars, rows: int, cols: int, max_degree: int) -> PolyMatrix:
    vt = tuple(vars)
    return PolyMatrix(
        vt,
        tuple(
            tuple(random_poly(rng, vt, max_degree) for _ in range(cols))
            for _ in range(rows)
        ),
    )


def random_unimodular_matrix(rng, vars, n: int, max_degree: int) -> PolyMatrix:
    """Identity plus a strictly triangular part; determinant one everywhere."""
    vt = tuple(vars)
    upper = rng.randint(0, 1) == 1
    one = MultiPoly.const(vt, 1)
    zero = MultiPoly.zero(vt)

    def entry(i: int, j: int) -> MultiPoly:
        if i == j:
            return one
        if (j > i) == upper and i != j:
            return random_poly(rng, vt, max_degree)
        return zero

    return PolyMatrix.build(vt, n, n, entry)


def random_morphism(rng, bundle: DecomposedDVB, max_degree: int) -> DVBMorphism:
    """Invertible block endomorphism with unit determinant blocks."""
    vars = bundle.chart.names
    psi = tuple(
        tuple(
            tuple(random_poly(rng, vars, max_degree) for _ in range(bundle.n_F))
            for _ in range(bundle.n_E)
        )
        for _ in range(bundle.n_C)
    )
    return DVBMorphism(
        bundle,
        bundle,
        random_unimodular_matrix(rng, vars, bundle.n_F, max_degree),
        random_unimodular_matrix(rng, vars, bundle.n_C, max_degree),
        random_unimodular_matrix(rng, vars, bundle.n_E, max_degree),
        psi,
    )


def random_vector_field(rng, vb: VectorBundle, max_degree: int) -> GeneralVectorField:
    """Half the draws are degree zero, half carry a nonlinear twist."""
    names = vb.chart.names
    linear = LinearVectorField(
        vb,
        random_poly_vector(rng, names, vb.chart.dim, max_degree),
        random_poly_matrix(rng, names, vb.rank, vb.rank, max_degree),
    ).as_general()
    if vb.rank == 0 or rng.randint(0, 1) == 0:
        return linear
    vars = total_space_vars(vb)
    e1sq = MultiPoly.var(vars, "e1") * MultiPoly.var(vars, "e1")
    vert = (linear.vert[0] + e1sq,) + linear.vert[1:]
    return GeneralVectorField(vb, linear.base, vert)


def random_one_form(rng, vb: VectorBundle, max_degree: int) -> GeneralOneForm:
    names = vb.chart.names
    linear = LinearOneForm(
        vb,
        random_poly_vector(rng, names, vb.rank, max_degree),
        tuple(
            random_poly_vector(rng, names, vb.rank, max_degree)
            for _ in range(vb.chart.dim)
        ),
    ).as_general()
    if vb.rank == 0 or rng.randint(0, 1) == 0:
        return linear
    vars = total_space_vars(vb)
    e1 = MultiPoly.var(vars, "e1")
    de = (linear.de_coeffs[0] + e1,) + linear.de_coeffs[1:]
    return GeneralOneForm(vb, linear.dx_coeffs, de)


def _antisym_from_upper(vars, n: int, upper) -> PolyMatrix:
    z = MultiPoly.zero(vars)
    # evaluate each upper entry once so random draws mirror exactly
    cache = {(i, j): upper(i, j) for i in range(n) for j in range(i + 1, n)}

    def entry(i: int, j: int) -> MultiPoly:
        if i < j:
            return cache[(i, j)]
        if i > j:
            return -cache[(j, i)]
        return z

    return PolyMatrix.build(vars, n, n, entry)


def random_bivector(rng, vb: VectorBundle, max_degree: int) -> Bivector:
    """Fiberwise-linear shape by default; half the draws break one block."""
    vars = total_space_vars(vb)
    n, k = vb.chart.dim, vb.rank
    names = vb.chart.names
    evars = [MultiPoly.var(vars, f"e{a + 1}") for a in range(k)]

    def mixed(i: int, a: int) -> MultiPoly:
        return random_poly(rng, names, max_degree).extend(vars)

    def fiber_linear(a: int, b: int) -> MultiPoly:
        acc = MultiPoly.zero(vars)
        for c in range(k):
            acc = acc + random_poly(rng, names, max_degree).extend(vars) * evars[c]
        return acc

    l_ij = PolyMatrix.zero(vars, n, n)
    l_ia = PolyMatrix.build(vars, n, k, mixed)
    l_ab = _antisym_from_upper(vars, k, fiber_linear)
    if k == 0 or rng.randint(0, 1) == 0:
        return Bivector(vb, l_ij, l_ia, l_ab)
    # break linearity with a constant term in the fiber block
    if k >= 2:
        one = MultiPoly.const(vars, 1)
        bumped = _antisym_from_upper(
            vars, k, lambda i, j: l_ab.entries[i][j] + one if (i, j) == (0, 1) else l_ab.entries[i][j]
        )
        return Bivector(vb, l_ij, l_ia, bumped)
    if n >= 1:
        e1 = MultiPoly.var(vars, "e1")
        bumped_mixed = PolyMatrix.build(
            vars, n, k, lambda i, a: l_ia.entries[i][a] + e1 if (i, a) == (0, 0) else l_ia.entries[i][a]
        )
        return Bivector(vb, l_ij, bumped_mixed, l_ab)
    return Bivector(vb, l_ij, l_ia, l_ab)


def random_two_form(rng, vb: VectorBundle, max_degree: int) -> LinearTwoForm:
    """Half the draws are closed by construction."""
    names = vb.chart.names
    n, k = vb.chart.dim, vb.rank
    omega_ia = tuple(
        random_poly_vector(rng, names, k, max_degree) for _ in range(n)
    )
    if rng.randint(0, 1) == 0:
        grid = tuple(
            tuple(
                tuple(
                    omega_ia[i][a].partial(names[j]) - omega_ia[j][a].partial(names[i])
                    for a in range(k)
                )
                for j in range(n)
            )
            for i in range(n)
        )
        return LinearTwoForm(vb, grid, omega_ia)
    upper = {
        (i, j): random_poly_vector(rng, names, k, max_degree)
        for i in range(n)
        for j in range(i + 1, n)
    }
    zero_row = (MultiPoly.zero(names),) * k

    def row(i: int, j: int):
        if i < j:
            return upper[(i, j)]
        if i > j:
            return tuple(-p for p in upper[(j, i)])
        return zero_row

    grid = tuple(tuple(row(i, j) for j in range(n)) for i in range(n))
    return LinearTwoForm(vb, grid, omega_ia)


def random_metric(rng, vb: VectorBundle, max_degree: int) -> Metric:
    """Unimodular congruence of the identity; nonsingular at every point."""
    a = random_unimodular_matrix(rng, vb.chart.names, vb.rank, max_degree)
    return Metric(vb, a * a.transpose())


def random_connection(
    rng, vb: VectorBundle, max_degree: int, symmetric: bool = False
) -> LinearConnection:
    names = vb.chart.names
    n, k = vb.chart.dim, vb.rank
    if symmetric and k != n:
        raise ValueError("a symmetric connection needs the rank to match the chart")
    grid = [
        [[random_poly(rng, names, max_degree) for _ in range(k)] for _ in range(n)]
        for _ in range(k)
    ]
    if symmetric:
        for a in range(k):
            for i in range(n):
                for b in range(i + 1, n):
                    grid[a][b][i] = grid[a][i][b]
    return LinearConnection(
        vb, tuple(tuple(tuple(row) for row in plane) for plane in grid)
    )


def random_core_section(rng, chart: Chart, n_c: int, max_degree: int) -> CoreSection:
    return CoreSection(chart, random_poly_vector(rng, chart.names, n_c, max_degree))


def gen_random_scenario(
    seed: int,
    max_rank: int = 3,
    max_degree: int = 2,
    symmetric: bool = False,
) -> Scenario:
    """Deterministic full scenario: every section populated from the seed."""
    if max_rank < 1:
        raise ValueError("rank bound must be positive")
    if max_degree < 0:
        raise ValueError("degree bound must be nonnegative")
    shape_rng = random.Random(derive_seed(seed, "shape"))
    n = shape_rng.randint(1, min(3, max_rank))
    n_f = shape_rng.randint(1, max_rank)
    n_c = shape_rng.randint(1, max_rank)
    n_e = n if symmetric else shape_rng.randint(1, max_rank)
    chart = Chart.of_dim(n)
    bundle = DecomposedDVB(chart, n_f, n_c, n_e)
    side = VectorBundle(chart, n_e, bundle.labels[2])

    def sub(tag: str) -> random.Random:
        return random.Random(derive_seed(seed, tag))

    return Scenario(
        bundle=bundle,
        morphism=random_morphism(sub("morphism"), bundle, max_degree),
        vector_field=random_vector_field(sub("vector_field"), side, max_degree),
        one_form=random_one_form(sub("one_form"), side, max_degree),
        bivector=random_bivector(sub("bivector"), side, max_degree),
        two_form=random_two_form(sub("two_form"), side, max_degree),
        metric=random_metric(sub("metric"), side, max_degree),
        connection=random_connection(
            sub("connection"), side, max_degree, symmetric=symmetric
        ),
        core_section=random_core_section(sub("core_section"), chart, n_c, max_degree),
        seed=seed,
        samples=100,
        bound=7,
    )
