"""Built-in catalog of continuous compact actions.

Three entries, keyed by id:

  hopf-u1-r4        circle acting diagonally on R^4 = C^2 (free away from 0)
  so2xso3-r5        SO(2) x SO(3) acting blockwise on R^2 + R^3
  so2-tensor-so3-r6 SO(2) x SO(3) acting on R^2 (x) R^3

Each action exposes three discretizations, tuned to their consumers:

* ``grid(density)``: a deterministic parameter grid with roughly ``density``
  elements total (density counts samples per compact 1-parameter subgroup;
  multi-parameter groups split the budget across axes). Used by the
  quotient-metric oracle; the chordal min-distance error is O(1/m).
* ``fs_sample()``: a Haar quadrature (uniform grids on periodic angles,
  Gauss-Legendre in cos(beta) for the SO(3) polar angle). Characters of g^2
  are low-degree trigonometric polynomials, so indicator sums computed with
  it are exact to roundoff.
* ``probe_generators()``: a few elements at generic angles whose generated
  subgroup is dense in the image of G; commuting with the probes is
  equivalent to commuting with the whole group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ValidationError

DEFAULT_DENSITY = 2048


def rot2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def so3_zyz(alpha: float, beta: float, gamma: float) -> np.ndarray:
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    rz_a = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
    ry_b = np.array([[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]])
    rz_g = np.array([[cg, -sg, 0.0], [sg, cg, 0.0], [0.0, 0.0, 1.0]])
    return rz_a @ ry_b @ rz_g


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0],) * 2)
    out[:a.shape[0], :a.shape[0]] = a
    out[a.shape[0]:, a.shape[0]:] = b
    return out


@dataclass(frozen=True)
class ParamAxis:
    """One sampler parameter: [0, length), periodic unless it is a polar
    angle (weight scales the share of the grid budget)."""

    length: float
    periodic: bool
    weight: float


@dataclass(frozen=True)
class ActionMetadata:
    has_boundary: bool
    cohomogeneity: int
    expected_sector_angle: float | None
    singular_isotropy_note: str | None


@dataclass(frozen=True)
class CatalogAction:
    """A continuous compact action with deterministic samplers."""

    id: str
    dimension: int
    axes: tuple[ParamAxis, ...]
    element_fn: Callable[[np.ndarray], np.ndarray]
    probe_fn: Callable[[], tuple[np.ndarray, ...]]
    central_fn: Callable[[], tuple[np.ndarray, ...]]
    haar_fn: Callable[[], tuple[np.ndarray, np.ndarray]]
    generic_fn: Callable[[np.ndarray], bool]
    metadata: ActionMetadata

    def element(self, params) -> np.ndarray:
        return self.element_fn(np.asarray(params, dtype=float))

    def grid_counts(self, density: int) -> tuple[int, ...]:
        weights = [ax.weight for ax in self.axes]
        prod_w = math.prod(weights)
        base = (density / prod_w) ** (1.0 / len(self.axes))
        return tuple(max(3, int(round(w * base))) for w in weights)

    def grid(self, density: int | None = None):
        """(params (N, k), elements (N, d, d)) for the coarse search grid.

        Periodic axes use endpoint-excluded uniform grids that include 0, so
        the identity is always on the grid. Cached per (id, density).
        """
        density = DEFAULT_DENSITY if density is None else int(density)
        key = (self.id, density)
        cached = _GRID_CACHE.get(key)
        if cached is not None:
            return cached
        counts = self.grid_counts(density)
        axes_vals = []
        for ax, n in zip(self.axes, counts):
            if ax.periodic:
                axes_vals.append(np.arange(n) * (ax.length / n))
            else:
                axes_vals.append(np.linspace(0.0, ax.length, n))
        mesh = np.meshgrid(*axes_vals, indexing="ij")
        params = np.stack([m.ravel() for m in mesh], axis=1)
        elements = np.stack([self.element_fn(p) for p in params])
        _GRID_CACHE[key] = (params, elements)
        return params, elements

    def grid_spacings(self, density: int | None = None) -> np.ndarray:
        density = DEFAULT_DENSITY if density is None else int(density)
        counts = self.grid_counts(density)
        return np.array([
            ax.length / n if ax.periodic else ax.length / max(n - 1, 1)
            for ax, n in zip(self.axes, counts)
        ])

    def fs_sample(self):
        """(elements, weights) Haar quadrature for indicator sums."""
        key = (self.id, "haar")
        cached = _GRID_CACHE.get(key)
        if cached is None:
            cached = self.haar_fn()
            _GRID_CACHE[key] = cached
        return cached

    def probe_generators(self) -> tuple[np.ndarray, ...]:
        return self.probe_fn()

    def central_directions(self) -> tuple[np.ndarray, ...]:
        """Skew generators of the central circles of the image of G."""
        return self.central_fn()

    def is_generic(self, x: np.ndarray) -> bool:
        return self.generic_fn(np.asarray(x, dtype=float))


_GRID_CACHE: dict = {}


def _periodic_nodes(n: int, length: float = 2.0 * math.pi) -> np.ndarray:
    return np.arange(n) * (length / n)


def _so3_haar_nodes(n_per: int = 8, n_gl: int = 8):
    """(weights, (alpha, beta, gamma) triples) for exact low-degree Haar
    integration over SO(3): Haar = sin(beta) dalpha dbeta dgamma / (8 pi^2)."""
    alphas = _periodic_nodes(n_per)
    gammas = _periodic_nodes(n_per)
    u_nodes, u_weights = np.polynomial.legendre.leggauss(n_gl)
    betas = np.arccos(u_nodes)
    triples = []
    weights = []
    for a in alphas:
        for b, wb in zip(betas, u_weights):
            for g in gammas:
                triples.append((a, b, g))
                weights.append(wb / 2.0 / (n_per * n_per))
    return np.array(weights), np.array(triples)


# ---------------------------------------------------------------- hopf-u1-r4

_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


def _hopf_element(params: np.ndarray) -> np.ndarray:
    r = rot2(params[0])
    return _block_diag(r, r)


def _hopf_probes():
    return (_hopf_element(np.array([1.0])), _hopf_element(np.array([2.3])))


def _hopf_central():
    return (_block_diag(_J2, _J2),)


def _hopf_haar():
    thetas = _periodic_nodes(64)
    elements = np.stack([_hopf_element(np.array([t])) for t in thetas])
    weights = np.full(len(thetas), 1.0 / len(thetas))
    return elements, weights


def _hopf_generic(x: np.ndarray) -> bool:
    return bool(np.linalg.norm(x) > 1e-6)


# ---------------------------------------------------------------- so2xso3-r5

def _block_element(params: np.ndarray) -> np.ndarray:
    return _block_diag(rot2(params[0]), so3_zyz(params[1], params[2], params[3]))


def _block_probes():
    return (
        _block_diag(rot2(1.0), np.eye(3)),
        _block_diag(np.eye(2), so3_zyz(1.0, 0.7, 0.3)),
        _block_diag(np.eye(2), so3_zyz(2.4, 1.9, 0.5)),
    )


def _block_central():
    return (_block_diag(_J2, np.zeros((3, 3))),)


def _block_haar():
    n_phi = 8
    phis = _periodic_nodes(n_phi)
    w3, triples = _so3_haar_nodes()
    elements = []
    weights = []
    for phi in phis:
        for w, (a, b, g) in zip(w3, triples):
            elements.append(_block_element(np.array([phi, a, b, g])))
            weights.append(w / n_phi)
    return np.stack(elements), np.array(weights)


def _block_generic(x: np.ndarray) -> bool:
    return bool(min(np.linalg.norm(x[:2]), np.linalg.norm(x[2:])) > 0.05 * np.linalg.norm(x))


# --------------------------------------------------------- so2-tensor-so3-r6

def _tensor_element(params: np.ndarray) -> np.ndarray:
    return np.kron(rot2(params[0]), so3_zyz(params[1], params[2], params[3]))


def _tensor_probes():
    return (
        np.kron(rot2(1.0), np.eye(3)),
        np.kron(np.eye(2), so3_zyz(1.0, 0.7, 0.3)),
        np.kron(np.eye(2), so3_zyz(2.4, 1.9, 0.5)),
    )


def _tensor_central():
    return (np.kron(_J2, np.eye(3)),)


def _tensor_haar():
    n_phi = 8
    phis = _periodic_nodes(n_phi)
    w3, triples = _so3_haar_nodes()
    elements = []
    weights = []
    for phi in phis:
        for w, (a, b, g) in zip(w3, triples):
            elements.append(_tensor_element(np.array([phi, a, b, g])))
            weights.append(w / n_phi)
    return np.stack(elements), np.array(weights)


def _tensor_generic(x: np.ndarray) -> bool:
    # Points on the two boundary rays have a rank-1 (resp. equal-singular-
    # value) 2x3 coordinate matrix; stay away from both strata.
    m = x.reshape(2, 3)
    s = np.linalg.svd(m, compute_uv=False)
    scale = np.linalg.norm(x)
    return bool(s[1] > 0.03 * scale and (s[0] - s[1]) > 0.03 * scale)


_FOUR_AXES = (
    ParamAxis(2.0 * math.pi, True, 1.0),
    ParamAxis(2.0 * math.pi, True, 1.0),
    ParamAxis(math.pi, False, 0.5),
    ParamAxis(2.0 * math.pi, True, 1.0),
)

CATALOG: dict[str, CatalogAction] = {
    "hopf-u1-r4": CatalogAction(
        id="hopf-u1-r4",
        dimension=4,
        axes=(ParamAxis(2.0 * math.pi, True, 1.0),),
        element_fn=_hopf_element,
        probe_fn=_hopf_probes,
        central_fn=_hopf_central,
        haar_fn=_hopf_haar,
        generic_fn=_hopf_generic,
        metadata=ActionMetadata(
            has_boundary=False,
            cohomogeneity=3,
            expected_sector_angle=None,
            singular_isotropy_note=None,
        ),
    ),
    "so2xso3-r5": CatalogAction(
        id="so2xso3-r5",
        dimension=5,
        axes=_FOUR_AXES,
        element_fn=_block_element,
        probe_fn=_block_probes,
        central_fn=_block_central,
        haar_fn=_block_haar,
        generic_fn=_block_generic,
        metadata=ActionMetadata(
            has_boundary=True,
            cohomogeneity=2,
            expected_sector_angle=math.pi / 2.0,
            singular_isotropy_note=(
                "boundary rays carry singular orbits isometric to a 2-sphere "
                "and a circle; no ambient isometry can swap them"
            ),
        ),
    ),
    "so2-tensor-so3-r6": CatalogAction(
        id="so2-tensor-so3-r6",
        dimension=6,
        axes=_FOUR_AXES,
        element_fn=_tensor_element,
        probe_fn=_tensor_probes,
        central_fn=_tensor_central,
        haar_fn=_tensor_haar,
        generic_fn=_tensor_generic,
        metadata=ActionMetadata(
            has_boundary=True,
            cohomogeneity=2,
            expected_sector_angle=math.pi / 4.0,
            singular_isotropy_note=(
                "boundary rays have non-conjugate isotropy (a circle vs. a "
                "circle extended by an order-2 element), so their orbits differ"
            ),
        ),
    ),
}


def get_action(action_id: str) -> CatalogAction:
    try:
        return CATALOG[action_id]
    except KeyError:
        raise ValidationError(
            f"unknown catalog id {action_id!r}; known: {sorted(CATALOG)}"
        ) from None


def catalog_summary() -> list[dict]:
    """Stable listing used by the CLI catalog command."""
    out = []
    for action_id in sorted(CATALOG):
        act = CATALOG[action_id]
        md = act.metadata
        out.append({
            "id": action_id,
            "dimension": act.dimension,
            "parameters": len(act.axes),
            "boundary": md.has_boundary,
            "cohomogeneity": md.cohomogeneity,
            "expectedSectorAngle": md.expected_sector_angle,
            "note": md.singular_isotropy_note,
        })
    return out


def trivial_action(dimension: int) -> CatalogAction:
    """Degenerate identity-only action on R^dimension.

    Not a catalog entry (no id lookup); it exists so the sector-angle
    estimator has a known-exact test case: for dimension 2 the sphere
    quotient is the whole circle, whose half-diameter is pi.
    """
    if dimension < 1:
        raise ValidationError("trivial_action needs dimension >= 1")
    eye = np.eye(dimension)

    def element(params: np.ndarray) -> np.ndarray:
        return eye

    def haar():
        return eye[None, :, :], np.array([1.0])

    return CatalogAction(
        id=f"trivial-r{dimension}",
        dimension=dimension,
        axes=(ParamAxis(2.0 * math.pi, True, 1.0),),
        element_fn=element,
        probe_fn=tuple,
        central_fn=tuple,
        haar_fn=haar,
        generic_fn=lambda x: bool(np.linalg.norm(x) > 1e-6),
        metadata=ActionMetadata(
            has_boundary=False,
            cohomogeneity=dimension,
            expected_sector_angle=math.pi if dimension == 2 else None,
            singular_isotropy_note=None,
        ),
    )
