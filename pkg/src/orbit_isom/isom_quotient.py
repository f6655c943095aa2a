"""Identity component of the isometry group of an orbit space.

The pipeline: split off the fixed subspace (it contributes a flat Euclidean
factor and its full motion group), build the equivariant isometry group
Isom_G(V)_0 = prod H_i over the isotypic components, then identify the kernel
of the descent homomorphism p: Isom_G(V)_0 -> Isom(V/G)_0. When the orbit
space has no boundary the kernel is exactly the set of central elements of G
lying in the identity component, and that equality is verified as a hard
check. With boundary present the kernel is searched over central candidates,
per-factor centers and whole-factor probes, and reported as a verified lower
bound.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from . import _numerics as num
from .catalog import DEFAULT_DENSITY, CatalogAction, get_action
from .commutant import (
    COMPLEX,
    QUATERNIONIC,
    REAL,
    EquivariantIsometryGroup,
    classify_component,
    commutant_basis,
    equivariant_isometry_group,
    isotypic_split,
)
from .errors import InternalCheckError, KernelAmbiguityError, OrbitIsomError, ValidationError
from .orbit_geometry import has_boundary, orbit_equivalence_test
from .repr_model import (
    DEDUP_TOL,
    DEFAULT_SEED,
    FiniteGroupData,
    RepresentationSpec,
    TrivialSplit,
    enumerate_group,
    fixed_subspace,
    load_spec,
    restrict_group,
)

DEFAULT_SAMPLE_COUNT = 200
CIRCLE_TEST_TIMES = (0.1, 0.37, 1.01)
WHOLE_FACTOR_PROBES = 5
CENTRAL_TOL = 1e-8

FORMULA_BOUNDARY_FREE = "proposition-4.1b"
FORMULA_SEARCH = "central-kernel-search"


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except OrbitIsomError as err:
        if getattr(err, "stage", None) is None:
            err.stage = name
        raise


def center_of_group(group: FiniteGroupData) -> np.ndarray:
    """Elements commuting with the whole group, as an (k, d, d) stack.

    Commuting with the generators is equivalent and much cheaper than
    testing against every element.
    """
    els = group.elements
    mask = np.ones(len(els), dtype=bool)
    for g in group.generators:
        comm = els @ g - g[None, :, :] @ els
        mask &= np.abs(comm).max(axis=(1, 2)) <= 1e-9
    return els[mask]


def _central_element_in_component(z: np.ndarray, equiv: EquivariantIsometryGroup) -> bool:
    total = np.zeros_like(z)
    for comp in equiv.components:
        p = comp.projector
        total += p @ z @ p
    if num.max_abs(z - total) > CENTRAL_TOL:
        raise InternalCheckError(
            "central element does not preserve the isotypic components")

    for factor in equiv.factors:
        if factor.schur_type != REAL:
            continue  # U(n), Sp(n) connected: no condition
        comp = equiv.components[factor.component_index]
        b = comp.basis
        zc = b.T @ z @ b
        if num.max_abs(zc.T @ zc - np.eye(zc.shape[0])) > CENTRAL_TOL:
            raise InternalCheckError(
                "coordinate extraction residual too large for a central element")
        # sign of det of the multiplicity-space coordinate matrix C: each
        # -1 eigenvalue of C appears irreducible_dim times in zc, complex
        # pairs contribute +1, so sign(det C) = (-1)^(m_minus / dim V_i).
        s = np.linalg.svd(zc + np.eye(zc.shape[0]), compute_uv=False)
        m_minus = int((s < 1e-6).sum())
        rest = s[s >= 1e-6]
        if rest.size and float(rest.min()) < 1e-3:
            raise InternalCheckError(
                "cannot resolve the -1 eigenvalue multiplicity of a central element")
        di = comp.irreducible_dim
        if m_minus % di != 0:
            raise InternalCheckError(
                "central element eigenvalues violate the isotypic block structure")
        if (m_minus // di) % 2 == 1:
            return False
    return True


def center_in_component(center_elements, equiv: EquivariantIsometryGroup):
    """Central elements lying in the identity component prod H_i.

    Real-type factors require the multiplicity-space coordinate matrix to
    have positive determinant (membership in SO(n)); Complex and
    Quaternionic factors impose no condition.
    """
    kept = []
    for z in center_elements:
        z = np.asarray(z, dtype=float)
        if _central_element_in_component(z, equiv):
            kept.append(z)
    return kept


def _close_under_product(gens, dim: int, cap: int = 4096):
    els = [np.eye(dim)]

    def _known(m):
        return any(num.max_abs(e - m) <= DEDUP_TOL for e in els)

    queue = [np.eye(dim)]
    gens = [np.asarray(g, dtype=float) for g in gens]
    while queue:
        cur = queue.pop()
        for g in gens:
            nxt = cur @ g
            if not _known(nxt):
                if len(els) >= cap:
                    raise InternalCheckError(
                        "discrete kernel closure exceeded the safety cap")
                els.append(nxt)
                queue.append(nxt)
    return els


@dataclass(frozen=True)
class KernelDescription:
    """ker(p) for p: Isom_G(V)_0 -> Isom(V/G)_0, as discovered by search.

    finite_part is the group generated by the discrete orbit-trivial
    candidates (always contains the identity); continuous_part lists the
    lie-basis indices whose circle subgroups are orbit-trivial.
    """

    finite_part: tuple
    continuous_part: tuple
    contains_center_of_g: bool
    whole_factors: tuple        # factor indices entirely orbit-trivial
    factor_discrete: tuple      # factor indices whose -I block is in the kernel
    central_part: tuple         # subgroup generated by in-component central elements

    @property
    def finite_order(self) -> int:
        return len(self.finite_part)


def _discrete_center_candidate(factor, equiv: EquivariantIsometryGroup,
                               dim: int) -> np.ndarray | None:
    # -I_block is central in Sp(n) always and in SO(n) for even n >= 4;
    # for U(n) and SO(2) it sits on the center circle, tested separately.
    n = factor.multiplicity
    if factor.schur_type == QUATERNIONIC or (
            factor.schur_type == REAL and n >= 4 and n % 2 == 0):
        comp = equiv.components[factor.component_index]
        return np.eye(dim) - 2.0 * comp.projector
    return None


def compute_kernel(equiv: EquivariantIsometryGroup, ctx, *,
                   sample_count: int = DEFAULT_SAMPLE_COUNT,
                   seed: int = DEFAULT_SEED,
                   density: int | None = None) -> KernelDescription:
    """Search ker(p) over central candidates, factor centers, whole factors.

    Candidates: in-component central elements of a finite G (they must pass,
    and failing one is an internal error); the central circle directions of
    a catalog action; per factor, 5 random whole-factor probes, the center
    circle generator for U(n)/SO(2) factors at t in {0.1, 0.37, 1.01}, and
    the -I block for Sp(n) and even SO(n >= 4) factors. A circle passing at
    some t and failing at others aborts as ambiguous. For finite G any
    passing circle or whole factor is an internal error (the kernel of a
    finite-group quotient is finite).
    """
    finite = isinstance(ctx, FiniteGroupData)
    d = ctx.dimension

    central_gens: list = []
    if finite:
        center = center_of_group(ctx)
        in_comp = center_in_component(center, equiv)
        for z in in_comp:
            if not orbit_equivalence_test(ctx, z, sample_count, seed, density=density):
                raise InternalCheckError(
                    "a central element inside the identity component moved an "
                    "orbit; the kernel must contain the in-component center")
        central_gens = in_comp
    else:
        for a in ctx.central_directions():
            for t in CIRCLE_TEST_TIMES:
                if not orbit_equivalence_test(ctx, num.expm(t * a), sample_count,
                                              seed, density=density):
                    raise InternalCheckError(
                        "a central circle of the action moved an orbit; the "
                        "kernel must contain the center of the image")

    continuous: list[int] = []
    whole: list[int] = []
    factor_discrete: list[int] = []
    extra_gens: list[np.ndarray] = []
    rng = np.random.default_rng([seed, 104729])

    for fi, factor in enumerate(equiv.factors):
        if factor.dim == 0:
            continue  # SO(1): trivial factor, nothing to test
        sub = equiv.factor_lie_basis(factor)

        whole_ok = True
        for _ in range(WHOLE_FACTOR_PROBES):
            coeff = rng.standard_normal(factor.dim)
            coeff /= np.linalg.norm(coeff)
            probe = num.expm(np.tensordot(coeff, sub, axes=1))
            if not orbit_equivalence_test(ctx, probe, sample_count, seed,
                                          density=density):
                whole_ok = False
                break
        if whole_ok:
            if finite:
                raise InternalCheckError(
                    "whole-factor probes passed for a finite group; its "
                    "quotient kernel must be finite")
            whole.append(fi)
            if factor.center_circle_index is not None:
                continuous.append(factor.center_circle_index)
            continue

        circle_in = False
        if factor.center_circle_index is not None:
            a = equiv.lie_basis[factor.center_circle_index]
            verdicts = [
                orbit_equivalence_test(ctx, num.expm(t * a), sample_count, seed,
                                       density=density)
                for t in CIRCLE_TEST_TIMES
            ]
            if all(verdicts):
                if finite:
                    raise InternalCheckError(
                        "an orbit-trivial circle passed for a finite group; "
                        "its quotient kernel must be finite")
                circle_in = True
                continuous.append(factor.center_circle_index)
            elif any(verdicts):
                raise KernelAmbiguityError(
                    f"kernel resolution ambiguous: the center circle of "
                    f"{factor.name} passes at some test angles and fails at others")

        if not circle_in:
            z = _discrete_center_candidate(factor, equiv, d)
            if z is not None and orbit_equivalence_test(ctx, z, sample_count, seed,
                                                        density=density):
                factor_discrete.append(fi)
                extra_gens.append(z)

    finite_part = _close_under_product(list(central_gens) + extra_gens, d)
    central_part = _close_under_product(list(central_gens), d)
    return KernelDescription(
        finite_part=tuple(finite_part),
        continuous_part=tuple(continuous),
        contains_center_of_g=True,
        whole_factors=tuple(whole),
        factor_discrete=tuple(factor_discrete),
        central_part=tuple(central_part),
    )


def _assert_boundary_free_kernel(kernel: KernelDescription, ctx,
                                 equiv: EquivariantIsometryGroup) -> None:
    """Hard check: without boundary the kernel equals the in-component center."""
    if isinstance(ctx, FiniteGroupData):
        if kernel.continuous_part or kernel.whole_factors:
            raise InternalCheckError(
                "boundary-free quotient of a finite group produced a "
                "continuous kernel")
        if len(kernel.finite_part) != len(kernel.central_part):
            raise InternalCheckError(
                "boundary-free kernel differs from the in-component center "
                f"({len(kernel.finite_part)} vs {len(kernel.central_part)} elements)")
        for m in kernel.finite_part:
            if not any(num.max_abs(m - c) <= DEDUP_TOL for c in kernel.central_part):
                raise InternalCheckError(
                    "boundary-free kernel contains a non-central element")
        return

    if kernel.whole_factors or kernel.factor_discrete or len(kernel.finite_part) != 1:
        raise InternalCheckError(
            "boundary-free catalog quotient produced kernel parts beyond "
            "the central circles")
    central = ctx.central_directions()
    if not central and kernel.continuous_part:
        raise InternalCheckError(
            "boundary-free catalog quotient has kernel circles but the "
            "action image has no central circle")
    if not kernel.continuous_part and central:
        raise InternalCheckError(
            "the central circle of the action is missing from the kernel")
    if central:
        span = num.span_basis(np.stack([np.asarray(a, float) for a in central]))
        kernel_dirs = np.stack([equiv.lie_basis[i] for i in kernel.continuous_part])
        kspan = num.span_basis(kernel_dirs)
        for a in kernel_dirs:
            coeffs = np.einsum("kij,ij->k", span, a)
            proj = np.tensordot(coeffs, span, axes=1)
            if num.max_abs(a - proj) > CENTRAL_TOL:
                raise InternalCheckError(
                    "a kernel circle is not central in the image despite the "
                    "quotient having no boundary")
        for a in span:
            coeffs = np.einsum("kij,ij->k", kspan, a)
            proj = np.tensordot(coeffs, kspan, axes=1)
            if num.max_abs(a - proj) > CENTRAL_TOL:
                raise InternalCheckError(
                    "a central circle of the image is missing from the kernel")


_FACTOR_NAME_RE = re.compile(r"^(SO|U|Sp)\((\d+)\)$")
_CENTRAL_ANNOTATIONS = ("", "/{±I}", "/center", "/whole-factor")


def _annotated_name(fi: int, factor, kernel: KernelDescription) -> str:
    if fi in kernel.whole_factors:
        suffix = "/center" if factor.center_circle_index is not None else "/whole-factor"
        return factor.name + suffix
    if (factor.center_circle_index is not None
            and factor.center_circle_index in kernel.continuous_part):
        return factor.name + "/center"
    if fi in kernel.factor_discrete:
        return factor.name + "/{±I}"
    return factor.name


def verify_theorem_B(report: dict) -> str:
    """Structural validation: every factor is SO/U/Sp and every kernel
    annotation quotients by a central subgroup only."""
    for entry in report["compactFactors"]:
        name = entry["name"]
        base, sep, rest = name.partition("/")
        annotation = sep + rest if sep else ""
        if not _FACTOR_NAME_RE.match(base):
            return "fail"
        if annotation not in _CENTRAL_ANNOTATIONS:
            return "fail"
        if entry["type"] not in (REAL, COMPLEX, QUATERNIONIC):
            return "fail"
    return "pass"


def classify_irreducible(report: dict) -> str:
    """Trichotomy for an irreducible representation, by Schur type.

    Applicable when there is no fixed subspace and exactly one component of
    multiplicity one; otherwise returns "not-irreducible".
    """
    if report["euclideanFactorDim"] != 0:
        return "not-irreducible"
    if len(report["compactFactors"]) != 1:
        return "not-irreducible"
    entry = report["compactFactors"][0]
    if entry["multiplicity"] != 1:
        return "not-irreducible"
    return {
        REAL: "finite-group",
        COMPLEX: "trivial-or-U1",
        QUATERNIONIC: "trivial-or-Sp1-or-SO3",
    }[entry["type"]]


def _quotient_description(equiv, kernel: KernelDescription,
                          euclidean_dim: int) -> str:
    pieces = []
    if euclidean_dim > 0:
        pieces.append(f"Isom(R^{euclidean_dim})_0")
    if equiv is not None:
        for fi, factor in enumerate(equiv.factors):
            if factor.dim == 0:
                continue  # SO(1) contributes nothing
            if fi in kernel.whole_factors:
                continue  # quotients to a point
            circle_in = (factor.center_circle_index is not None
                         and factor.center_circle_index in kernel.continuous_part)
            if circle_in:
                if factor.schur_type == COMPLEX and factor.multiplicity >= 2:
                    piece = f"PSU({factor.multiplicity})"
                    if factor.multiplicity == 2:
                        piece += " (= SO(3))"
                else:
                    piece = factor.name + "/center"
            elif fi in kernel.factor_discrete:
                if factor.schur_type == QUATERNIONIC and factor.multiplicity == 1:
                    piece = "SO(3) (= Sp(1)/{±I})"
                else:
                    piece = factor.name + "/{±I}"
            else:
                piece = factor.name
            pieces.append(piece)
    return " x ".join(pieces) if pieces else "trivial"


@dataclass(frozen=True)
class AnalysisResult:
    """Everything the pipeline computed, plus the JSON-ready report."""

    source: str
    split: TrivialSplit | None
    context: object                     # reduced FiniteGroupData or CatalogAction
    ambient_group: FiniteGroupData | None
    equiv: EquivariantIsometryGroup | None
    kernel: KernelDescription
    boundary: bool
    report: dict


def _build_report(*, euclidean_dim: int, equiv, kernel: KernelDescription,
                  boundary: bool, formula: str, kernel_method: str,
                  seed: int, sample_count: int,
                  catalog: CatalogAction | None, density: int | None) -> dict:
    factors = [] if equiv is None else list(equiv.factors)
    compact = [
        {
            "name": _annotated_name(fi, f, kernel),
            "type": f.schur_type,
            "multiplicity": int(f.multiplicity),
        }
        for fi, f in enumerate(factors)
    ]
    total_rank = 0 if equiv is None else equiv.rank
    rank = int(total_rank - len(kernel.continuous_part))

    report = {
        "euclideanFactorDim": int(euclidean_dim),
        "compactFactors": compact,
        "kernel": {
            "finiteOrder": int(kernel.finite_order),
            "circleDirections": int(len(kernel.continuous_part)),
            "containsCenterOfG": bool(kernel.contains_center_of_g),
        },
        "boundary": bool(boundary),
        "formulaApplied": formula,
        "rank": rank,
        "theoremB": "",
        "theoremC": "",
        "seed": int(seed),
        "irreducible": False,
        "notes": {},
    }
    report["theoremB"] = verify_theorem_B(report)

    trichotomy = classify_irreducible(report)
    irreducible = trichotomy != "not-irreducible"
    report["irreducible"] = irreducible
    if not irreducible:
        report["theoremC"] = "n/a"
    else:
        ok = rank <= 1
        if trichotomy == "finite-group":
            ok = ok and rank == 0
        report["theoremC"] = "pass" if ok else "fail"

    notes = {
        "method": "commutant-center split",
        "kernelMethod": kernel_method,
        "rng": "numpy-pcg64",
        "sampleCount": int(sample_count),
        "equivariantGroupDim": 0 if equiv is None else int(equiv.dimension),
        "euclideanIsometryDim": int(euclidean_dim + euclidean_dim * (euclidean_dim - 1) // 2),
        "quotientDescription": _quotient_description(equiv, kernel, euclidean_dim),
        "irreducibleClass": trichotomy,
    }
    if kernel.whole_factors and equiv is not None:
        notes["kernelWholeFactors"] = [equiv.factors[i].name for i in kernel.whole_factors]
    if catalog is not None:
        m = DEFAULT_DENSITY if density is None else int(density)
        notes["catalogDiscretization"] = {
            "density": m,
            "gridCounts": [int(c) for c in catalog.grid_counts(m)],
            "chordalErrorOrder": "O(1/density) per 1-parameter subgroup",
        }
    report["notes"] = notes
    return report


def _kernel_method_text(boundary: bool) -> str:
    if not boundary:
        return ("no boundary: the kernel equals the central elements inside "
                "the identity component (verified exactly)")
    return ("boundary present: kernel searched over central candidates, "
            "factor centers, and whole-factor probes; the result is a "
            "verified lower bound, not a completeness claim")


def _resolve_source(source):
    """Returns (label, spec | None, action | None)."""
    if isinstance(source, CatalogAction):
        return f"catalog:{source.id}", None, source
    if isinstance(source, RepresentationSpec):
        if source.kind.startswith("catalog:"):
            return source.kind, None, get_action(source.catalog_id)
        return "finite-spec", source, None
    if isinstance(source, str):
        if source.startswith("catalog:"):
            return source, None, get_action(source.split(":", 1)[1])
        return source, load_spec(source), None
    if isinstance(source, dict):
        from .repr_model import parse_spec
        spec = parse_spec(source)
        if spec.kind.startswith("catalog:"):
            return spec.kind, None, get_action(spec.catalog_id)
        return "finite-spec", spec, None
    raise ValidationError(f"unsupported analysis source: {type(source).__name__}")


def quotient_isometry_group(source, *, seed: int = DEFAULT_SEED,
                            sample_count: int = DEFAULT_SAMPLE_COUNT,
                            density: int | None = None) -> AnalysisResult:
    """Full pipeline: source -> Isom(V/G)_0 structure report.

    ``source`` may be a spec file path, a parsed spec/dict, a catalog id of
    the form "catalog:<id>", or a CatalogAction.
    """
    label, spec, action = _stage("parse", _resolve_source, source)
    if action is not None:
        return _analyze_catalog(label, action, seed=seed,
                                sample_count=sample_count, density=density)
    return _analyze_finite(label, spec, seed=seed, sample_count=sample_count)


def _analyze_finite(label: str, spec: RepresentationSpec, *, seed: int,
                    sample_count: int) -> AnalysisResult:
    group = _stage("enumerate", enumerate_group, spec)
    split = _stage("trivial-split", fixed_subspace, group.generators,
                   group.dimension, tolerance=spec.tolerance)
    euclidean_dim = split.fixed_dim

    if split.complement_dim == 0:
        kernel = KernelDescription(
            finite_part=(np.eye(0),), continuous_part=(),
            contains_center_of_g=True, whole_factors=(), factor_discrete=(),
            central_part=(np.eye(0),))
        report = _build_report(
            euclidean_dim=euclidean_dim, equiv=None, kernel=kernel,
            boundary=False, formula=FORMULA_BOUNDARY_FREE,
            kernel_method=_kernel_method_text(False), seed=seed,
            sample_count=sample_count, catalog=None, density=None)
        return AnalysisResult(
            source=label, split=split, context=None, ambient_group=group,
            equiv=None, kernel=kernel, boundary=False, report=report)

    reduced = _stage("restrict", restrict_group, group, split)
    commutant = _stage("commutant", commutant_basis, reduced.generators)
    parts = _stage("isotypic-split", isotypic_split, commutant,
                   reduced.generators, seed)
    weights = np.full(reduced.order, 1.0 / reduced.order)
    components = [
        _stage("classify", classify_component, p, reduced.elements, weights, commutant)
        for p in parts
    ]
    equiv = _stage("equivariant-group", equivariant_isometry_group,
                   components, commutant, reduced.generators)
    boundary = _stage("boundary", has_boundary, reduced)
    kernel = _stage("kernel", compute_kernel, equiv, reduced,
                    sample_count=sample_count, seed=seed)
    formula = FORMULA_SEARCH if boundary else FORMULA_BOUNDARY_FREE
    if not boundary:
        _stage("kernel-consistency", _assert_boundary_free_kernel,
               kernel, reduced, equiv)
    report = _build_report(
        euclidean_dim=euclidean_dim, equiv=equiv, kernel=kernel,
        boundary=boundary, formula=formula,
        kernel_method=_kernel_method_text(boundary), seed=seed,
        sample_count=sample_count, catalog=None, density=None)
    return AnalysisResult(
        source=label, split=split, context=reduced, ambient_group=group,
        equiv=equiv, kernel=kernel, boundary=boundary, report=report)


def _analyze_catalog(label: str, action: CatalogAction, *, seed: int,
                     sample_count: int, density: int | None) -> AnalysisResult:
    gens = list(action.probe_generators())
    split = _stage("trivial-split", fixed_subspace, gens, action.dimension)
    if split.fixed_dim != 0:
        raise InternalCheckError(
            f"catalog action {action.id} has invariant vectors; the catalog "
            f"assumes a fully moving action")
    commutant = _stage("commutant", commutant_basis, gens)
    parts = _stage("isotypic-split", isotypic_split, commutant, gens, seed)
    elements, weights = action.fs_sample()
    components = [
        _stage("classify", classify_component, p, elements, weights, commutant)
        for p in parts
    ]
    equiv = _stage("equivariant-group", equivariant_isometry_group,
                   components, commutant, gens)
    boundary = action.metadata.has_boundary
    kernel = _stage("kernel", compute_kernel, equiv, action,
                    sample_count=sample_count, seed=seed, density=density)
    formula = FORMULA_SEARCH if boundary else FORMULA_BOUNDARY_FREE
    if not boundary:
        _stage("kernel-consistency", _assert_boundary_free_kernel,
               kernel, action, equiv)
    report = _build_report(
        euclidean_dim=0, equiv=equiv, kernel=kernel, boundary=boundary,
        formula=formula, kernel_method=_kernel_method_text(boundary),
        seed=seed, sample_count=sample_count, catalog=action, density=density)
    return AnalysisResult(
        source=label, split=split, context=action, ambient_group=None,
        equiv=equiv, kernel=kernel, boundary=boundary, report=report)


_REPORT_SCHEMA = {
    "euclideanFactorDim": int,
    "compactFactors": list,
    "kernel": dict,
    "boundary": bool,
    "formulaApplied": str,
    "rank": int,
    "theoremB": str,
    "theoremC": str,
    "seed": int,
}
_KERNEL_SCHEMA = {
    "finiteOrder": int,
    "circleDirections": int,
    "containsCenterOfG": bool,
}


def validate_report_schema(report: dict) -> None:
    """Raises ValidationError unless the report matches the JSON contract."""
    if not isinstance(report, dict):
        raise ValidationError("report must be a JSON object")
    for key, typ in _REPORT_SCHEMA.items():
        if key not in report:
            raise ValidationError(f"report is missing the key {key!r}")
        if not isinstance(report[key], typ) or isinstance(report[key], bool) != (typ is bool):
            raise ValidationError(f"report key {key!r} has the wrong type")
    for entry in report["compactFactors"]:
        if not isinstance(entry, dict):
            raise ValidationError("compactFactors entries must be objects")
        for key, typ in (("name", str), ("type", str), ("multiplicity", int)):
            if key not in entry or not isinstance(entry[key], typ):
                raise ValidationError(f"compactFactors entry key {key!r} invalid")
    for key, typ in _KERNEL_SCHEMA.items():
        if key not in report["kernel"]:
            raise ValidationError(f"kernel is missing the key {key!r}")
        val = report["kernel"][key]
        if not isinstance(val, typ) or isinstance(val, bool) != (typ is bool):
            raise ValidationError(f"kernel key {key!r} has the wrong type")
    if report["formulaApplied"] not in (FORMULA_BOUNDARY_FREE, FORMULA_SEARCH):
        raise ValidationError("formulaApplied has an unknown value")
    if report["theoremB"] not in ("pass", "fail"):
        raise ValidationError("theoremB must be pass or fail")
    if report["theoremC"] not in ("pass", "fail", "n/a"):
        raise ValidationError("theoremC must be pass, fail, or n/a")


def report_json(report: dict) -> str:
    """Canonical serialization: stable key order, two-space indent."""
    return json.dumps(report, indent=2) + "\n"
