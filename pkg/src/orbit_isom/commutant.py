"""Commutant algebra, isotypic decomposition, and the equivariant isometry
group Isom_G(V)_0.

The commutant Hom_G(V, V) is the null space of the stacked Sylvester
operators A -> A g - g A over the generators (commuting with generators is
equivalent to commuting with the whole group). Isotypic components are
recovered by the commutant-center split: eigenspaces of a randomly sampled
symmetric element of the commutant's center. Component types follow the
indicator sum s = (1/|G|) sum_g trace(P rho(g^2) P), cross-checked against
the commutant dimension restricted to the component:

    s > 1/2   -> Real         n = round(s)        check c = n^2
    s < -1/2  -> Quaternionic n = round(-s/2)     check c = 4 n^2
    |s| <= 1/2 -> Complex     n = sqrt(c/2)       check integral

(The raw sum equals -2n for quaternionic components; the stored fsSum is
normalized to n*nu with nu in {+1, 0, -1}.) The identity component of the
equivariant isometry group is then the product of SO(n)/U(n)/Sp(n) factors,
with Lie algebra the skew-symmetric part of the commutant.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _numerics as num
from .errors import InternalCheckError, IsotypicSeparationError, TypeInconsistencyError

GAP_TOL = 1e-6
CLUSTER_TIGHT = 1e-9
MAX_SPLIT_RETRIES = 10
INTEGER_TOL = 1e-6

REAL = "Real"
COMPLEX = "Complex"
QUATERNIONIC = "Quaternionic"

_FACTOR_PREFIX = {REAL: "SO", COMPLEX: "U", QUATERNIONIC: "Sp"}


def _sylvester_rows(mat: np.ndarray) -> np.ndarray:
    """Row-major vec operator of A -> A m - m A."""
    d = mat.shape[0]
    eye = np.eye(d)
    return np.kron(eye, mat.T) - np.kron(mat, eye)


def commutant_basis(generators, *, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal (Frobenius) basis of {A : A g = g A for all generators},
    returned as a (k, d, d) stack."""
    gens = [np.asarray(g, dtype=float) for g in generators]
    d = gens[0].shape[0]
    if d == 0:
        return np.zeros((0, 0, 0))
    stacked = np.vstack([_sylvester_rows(g) for g in gens])
    null_basis, _ = num.nullspace(stacked, rank_tol=rank_tol, what="commutant")
    k = null_basis.shape[1]
    return null_basis.T.reshape(k, d, d).copy()


def commutant_center(generators, commutant: np.ndarray, *,
                     rank_tol: float | None = None) -> np.ndarray:
    """Basis of the center: matrices commuting with all generators and with
    every commutant basis element."""
    gens = [np.asarray(g, dtype=float) for g in generators]
    d = commutant.shape[1]
    rows = [_sylvester_rows(g) for g in gens]
    rows.extend(_sylvester_rows(b) for b in commutant)
    null_basis, _ = num.nullspace(np.vstack(rows), rank_tol=rank_tol, what="commutant center")
    k = null_basis.shape[1]
    return null_basis.T.reshape(k, d, d).copy()


@dataclass(frozen=True)
class ComponentSubspace:
    """One isotypic eigenspace: orthonormal basis columns plus the splitting
    eigenvalue used for deterministic ordering."""

    basis: np.ndarray  # (d, m) orthonormal columns
    eigenvalue: float

    @property
    def dimension(self) -> int:
        return int(self.basis.shape[1])

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def isotypic_split(commutant: np.ndarray, generators, seed: int, *,
                   rank_tol: float | None = None) -> list[ComponentSubspace]:
    """Isotypic components as eigenspaces of a random symmetric center element.

    The symmetric part of the center is exactly span{P_i} over the isotypic
    projectors, so a random symmetric center element is sum a_i P_i with
    generic coefficients and its eigenvalue clusters are the components.
    Clusters must be separated by more than GAP_TOL and internally tight;
    otherwise the draw is repeated with an advanced seed, up to
    MAX_SPLIT_RETRIES times.
    """
    d = commutant.shape[1]
    center = commutant_center(generators, commutant, rank_tol=rank_tol)
    if center.shape[0] == 0:
        raise InternalCheckError("commutant center is empty (identity is always central)")

    for attempt in range(MAX_SPLIT_RETRIES):
        rng = np.random.default_rng([seed, attempt])
        coeff = rng.standard_normal(center.shape[0])
        x = np.tensordot(coeff, center, axes=1)
        x = (x + x.T) / 2.0
        scale = num.max_abs(x)
        if scale < 1e-8:
            continue
        x /= scale
        evals, evecs = np.linalg.eigh(x)

        clusters: list[list[int]] = [[0]]
        for i in range(1, d):
            if evals[i] - evals[i - 1] > GAP_TOL:
                clusters.append([i])
            else:
                clusters[-1].append(i)
        tight = all(evals[c[-1]] - evals[c[0]] < CLUSTER_TIGHT for c in clusters)
        if not tight:
            continue

        parts = [
            ComponentSubspace(
                basis=evecs[:, c[0]:c[-1] + 1].copy(),
                eigenvalue=float(evals[c[0]]),
            )
            for c in clusters
        ]
        parts.sort(key=lambda p: (p.dimension, p.eigenvalue))
        return parts

    raise IsotypicSeparationError(
        f"isotypic separation failed after {MAX_SPLIT_RETRIES} re-randomizations"
    )


@dataclass(frozen=True)
class IsotypicComponent:
    """A classified isotypic component W = V_i^(n) inside the active space."""

    basis: np.ndarray        # (d, dim) orthonormal columns
    multiplicity: int        # n
    irreducible_dim: int     # dim V_i
    schur_type: str          # Real | Complex | Quaternionic
    fs_sum: float            # normalized indicator sum, within 1e-6 of n*nu
    commutant_dim: int       # commutant dimension restricted to the component
    eigenvalue: float        # ordering key from the split

    @property
    def dimension(self) -> int:
        return int(self.basis.shape[1])

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def _restricted_commutant_dim(basis: np.ndarray, commutant: np.ndarray) -> int:
    restricted = np.einsum("ia,kij,jb->kab", basis, commutant, basis)
    flat = restricted.reshape(restricted.shape[0], -1)
    s = np.linalg.svd(flat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return num.split_spectrum(s, 1e-8 * s[0], "restricted commutant")


def classify_component(subspace: ComponentSubspace, elements: np.ndarray,
                       weights: np.ndarray, commutant: np.ndarray) -> IsotypicComponent:
    """Type and multiplicity of one isotypic component.

    ``elements``/``weights`` describe the group average: all elements with
    uniform weights for a finite group, a Haar quadrature for catalog
    actions. Raises TypeInconsistencyError when the indicator sum, the
    restricted commutant dimension, and the component dimension disagree.
    """
    basis = subspace.basis
    m = basis.shape[1]
    squares = np.einsum("nij,njk->nik", elements, elements)
    raw = float(np.einsum("n,ia,nij,ja->", weights, basis, squares, basis))
    c = _restricted_commutant_dim(basis, commutant)

    nearest = round(raw)
    if abs(raw - nearest) > INTEGER_TOL:
        raise TypeInconsistencyError(
            f"indicator sum {raw!r} is not within {INTEGER_TOL} of an integer"
        )

    if raw > 0.5:
        schur = REAL
        n = int(nearest)
        if c != n * n:
            raise TypeInconsistencyError(
                f"Real component: commutant dim {c} != n^2 = {n * n} (s = {raw!r})"
            )
        stored = raw
    elif raw < -0.5:
        schur = QUATERNIONIC
        n = int(round(-raw / 2.0))
        if abs(raw + 2 * n) > INTEGER_TOL:
            raise TypeInconsistencyError(
                f"Quaternionic component: raw sum {raw!r} is not -2n"
            )
        if c != 4 * n * n:
            raise TypeInconsistencyError(
                f"Quaternionic component: commutant dim {c} != 4n^2 = {4 * n * n}"
            )
        stored = raw / 2.0
    else:
        schur = COMPLEX
        if abs(raw) > INTEGER_TOL:
            raise TypeInconsistencyError(
                f"Complex component: indicator sum {raw!r} not within {INTEGER_TOL} of 0"
            )
        if c % 2 != 0:
            raise TypeInconsistencyError(f"Complex component: commutant dim {c} is odd")
        n_float = (c / 2.0) ** 0.5
        n = int(round(n_float))
        if abs(n_float - n) > INTEGER_TOL or n < 1:
            raise TypeInconsistencyError(
                f"Complex component: c/2 = {c / 2} is not a perfect square"
            )
        stored = raw

    if n < 1 or m % n != 0:
        raise TypeInconsistencyError(
            f"component dimension {m} is not a multiple of multiplicity {n}"
        )
    return IsotypicComponent(
        basis=basis,
        multiplicity=n,
        irreducible_dim=m // n,
        schur_type=schur,
        fs_sum=stored,
        commutant_dim=c,
        eigenvalue=subspace.eigenvalue,
    )


def _skew_dim_formula(schur_type: str, n: int) -> int:
    if schur_type == REAL:
        return n * (n - 1) // 2
    if schur_type == COMPLEX:
        return n * n
    return n * (2 * n + 1)


def _factor_rank(schur_type: str, n: int) -> int:
    return n // 2 if schur_type == REAL else n


@dataclass(frozen=True)
class Factor:
    """One classical factor SO(n)/U(n)/Sp(n) acting on one component."""

    schur_type: str
    multiplicity: int
    component_index: int
    lie_start: int
    lie_stop: int
    center_circle_index: int | None  # global lie-basis index of the central circle

    @property
    def name(self) -> str:
        return f"{_FACTOR_PREFIX[self.schur_type]}({self.multiplicity})"

    @property
    def dim(self) -> int:
        return _skew_dim_formula(self.schur_type, self.multiplicity)

    @property
    def rank(self) -> int:
        return _factor_rank(self.schur_type, self.multiplicity)


@dataclass(frozen=True)
class EquivariantIsometryGroup:
    """Identity component of the G-equivariant isometries of the active
    space, as a product of classical factors with its Lie algebra basis."""

    factors: tuple[Factor, ...]
    components: tuple[IsotypicComponent, ...]
    lie_basis: np.ndarray  # (K, d, d), orthonormal, exactly skew
    dimension: int

    @property
    def total_dim(self) -> int:
        return self.dimension

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def factor_lie_basis(self, factor: Factor) -> np.ndarray:
        return self.lie_basis[factor.lie_start:factor.lie_stop]


def _skew_subbasis(block_basis: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the skew-symmetric part of span{block_basis}."""
    k = block_basis.shape[0]
    sym = np.stack([b + b.T for b in block_basis]).reshape(k, -1).T
    # block_basis is Frobenius-orthonormal, so an absolute tolerance is
    # meaningful here; a relative one misreads an all-skew stack as full rank.
    coeff_null, _ = num.nullspace(sym, rank_tol=1e-8, what="skew part")
    if coeff_null.shape[1] == 0:
        return block_basis[:0]
    skew = np.einsum("kc,kij->cij", coeff_null, block_basis)
    skew = (skew - np.transpose(skew, (0, 2, 1))) / 2.0
    return num.span_basis(skew, what="skew basis")


def _block_center_skew(block_basis: np.ndarray) -> np.ndarray:
    """Skew part of the center of the block algebra span{block_basis}."""
    k = block_basis.shape[0]
    rows = []
    for b in block_basis:
        comm = np.einsum("kij,jl->kil", block_basis, b) - np.einsum(
            "ij,kjl->kil", b, block_basis)
        rows.append(comm.reshape(k, -1).T)
    # Absolute tolerance: for a commutative block algebra the whole stack is
    # numerically zero and a relative cutoff would report an empty center.
    coeff_null, _ = num.nullspace(np.vstack(rows), rank_tol=1e-8, what="block center")
    if coeff_null.shape[1] == 0:
        return block_basis[:0]
    center = np.einsum("kc,kij->cij", coeff_null, block_basis)
    center = (center - np.transpose(center, (0, 2, 1))) / 2.0
    kept = num.span_basis(center, rank_tol=1e-8, what="center skew")
    return kept


def equivariant_isometry_group(components, commutant: np.ndarray,
                               generators) -> EquivariantIsometryGroup:
    """Assemble the factor list and an orthonormal Lie algebra basis.

    The Lie basis is grouped factor by factor; for U(n) and SO(2) factors the
    first element of the factor's slice generates the central circle. Every
    element is exactly skew and commutes with the generators within 1e-8.
    """
    components = tuple(components)
    d = commutant.shape[1] if commutant.size else (
        components[0].basis.shape[0] if components else 0)
    blocks: list[np.ndarray] = []
    factors: list[Factor] = []
    cursor = 0

    for idx, comp in enumerate(components):
        p = comp.projector
        block_all = np.einsum("ij,kjl,lm->kim", p, commutant, p)
        block_basis = num.span_basis(block_all, rank_tol=1e-8, what="component block")
        if block_basis.shape[0] != comp.commutant_dim:
            raise InternalCheckError(
                f"component {idx}: block algebra dim {block_basis.shape[0]} != "
                f"restricted commutant dim {comp.commutant_dim}"
            )
        skew = _skew_subbasis(block_basis)
        expected = _skew_dim_formula(comp.schur_type, comp.multiplicity)
        if skew.shape[0] != expected:
            raise InternalCheckError(
                f"component {idx}: skew dimension {skew.shape[0]} != "
                f"{expected} for {comp.schur_type}({comp.multiplicity})"
            )

        center_index = None
        ordered = skew
        if comp.schur_type == REAL and comp.multiplicity == 2:
            # so(2) is 1-dimensional: the factor is its own central circle.
            center_index = cursor
        elif comp.schur_type == COMPLEX:
            center_skew = _block_center_skew(block_basis)
            if center_skew.shape[0] != 1:
                raise InternalCheckError(
                    f"component {idx}: expected a 1-dim central circle, got "
                    f"{center_skew.shape[0]}"
                )
            j = center_skew[0]
            # Sign convention for determinism: first significant entry positive.
            flat = j.ravel()
            lead = flat[np.argmax(np.abs(flat) > 1e-8)]
            if lead < 0:
                j = -j
            rest = skew - np.einsum("kij,ij->k", skew, j)[:, None, None] * j
            rest = num.span_basis(rest, rank_tol=1e-8, what="non-central skew")
            if rest.shape[0] != expected - 1:
                raise InternalCheckError(
                    f"component {idx}: central complement dim {rest.shape[0]}"
                )
            ordered = np.concatenate([j[None], rest])
            center_index = cursor

        factors.append(Factor(
            schur_type=comp.schur_type,
            multiplicity=comp.multiplicity,
            component_index=idx,
            lie_start=cursor,
            lie_stop=cursor + expected,
            center_circle_index=center_index,
        ))
        cursor += expected
        if expected:
            blocks.append(ordered)

    lie_basis = (np.concatenate(blocks) if blocks else np.zeros((0, d, d)))
    for a in lie_basis:
        if num.max_abs(a + a.T) > 1e-12:
            raise InternalCheckError("lie basis element is not skew within 1e-12")
        for g in generators:
            if num.max_abs(a @ g - g @ a) > 1e-8:
                raise InternalCheckError("lie basis element does not commute with a generator")

    total = sum(f.dim for f in factors)
    if total != lie_basis.shape[0]:
        raise InternalCheckError(
            f"total Lie dimension {lie_basis.shape[0]} != factor formula sum {total}"
        )
    return EquivariantIsometryGroup(
        factors=tuple(factors),
        components=components,
        lie_basis=lie_basis,
        dimension=total,
    )


def exponential(equiv: EquivariantIsometryGroup, coefficients) -> np.ndarray:
    """exp of a coefficient combination of the Lie basis."""
    coefficients = np.asarray(coefficients, dtype=float)
    d = equiv.lie_basis.shape[1]
    if equiv.lie_basis.shape[0] == 0:
        return np.eye(d)
    a = np.tensordot(coefficients, equiv.lie_basis, axes=1)
    return num.expm(a)


def sample_equivariant_isometry(equiv: EquivariantIsometryGroup, t: float,
                                seed: int) -> np.ndarray:
    """exp(t * A) for a seeded random unit-Frobenius-norm direction A in the
    Lie algebra. Returns the identity when the Lie algebra is trivial."""
    k = equiv.lie_basis.shape[0]
    d = equiv.lie_basis.shape[1]
    if k == 0:
        return np.eye(d)
    rng = np.random.default_rng([seed])
    coeff = num.random_unit_vector(rng, k)
    x = exponential(equiv, t * coeff)
    resid = num.orthogonality_residual(x)
    if resid > 1e-9:
        raise InternalCheckError(f"sampled isometry lost orthogonality: {resid:.3e}")
    return x
