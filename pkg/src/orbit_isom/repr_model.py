"""Input model: representation specs, finite matrix-group closure, and the
splitting off of trivial factors.

A representation is given by orthogonal generator matrices acting on R^d (or
by a catalog id for the built-in continuous actions). Finite groups are
enumerated by breadth-first closure under right multiplication by the
generators, with grid-hash deduplication: entries are rounded to a 1e-6 grid
for hashing and candidate matches are verified within 1e-8 in max norm. Two
distinct stored elements closer than 10x the verify tolerance abort the run.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _numerics as num
from .errors import (
    DedupAmbiguityError,
    GroupSizeCapError,
    ValidationError,
)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_GROUP_SIZE_CAP = 20000
DEFAULT_SEED = 0

DEDUP_TOL = 1e-8
DEDUP_GUARD = 10.0
DEDUP_GRID = 1e-6
# Fractional distance from a grid midpoint below which the alternate rounding
# is probed too (covers drift across cell boundaries).
_BOUNDARY_BAND = 0.02
_MAX_FLIP_PROBES = 10


@dataclass(frozen=True)
class RepresentationSpec:
    """Validated description of an orthogonal action on R^dimension."""

    dimension: int
    generators: tuple[np.ndarray, ...]
    kind: str = "finite"
    tolerance: float = DEFAULT_TOLERANCE
    group_size_cap: int = DEFAULT_GROUP_SIZE_CAP
    seed: int = DEFAULT_SEED

    @property
    def catalog_id(self) -> str | None:
        if self.kind.startswith("catalog:"):
            return self.kind.split(":", 1)[1]
        return None


_SPEC_KEYS = {"dimension", "kind", "generators", "tolerance", "groupSizeCap", "seed"}


def _parse_matrix(raw, dim: int, index: int) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ValidationError(f"generator {index}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=float)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise ValidationError(
                f"generator {index}, row {i}: expected {dim} entries"
            )
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (str, int, float)):
                raise ValidationError(
                    f"generator {index}, entry ({i},{j}): expected a decimal "
                    f"string, got {type(entry).__name__}"
                )
            try:
                out[i, j] = float(entry)
            except ValueError as exc:
                raise ValidationError(
                    f"generator {index}, entry ({i},{j}): {entry!r} is not a decimal"
                ) from exc
    return out


def parse_spec(document: str | bytes | dict) -> RepresentationSpec:
    """Parse and validate a representation spec document (JSON text or dict).

    Matrix entries arrive as decimal strings and are parsed once to full
    double precision. Every generator must be orthogonal within tolerance.
    """
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, dict):
        raise ValidationError("spec document must be a JSON object")
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        raise ValidationError(f"unknown spec fields: {sorted(unknown)}")

    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValidationError("dimension must be a positive integer")
    kind = doc.get("kind", "finite")
    if not (kind == "finite" or (isinstance(kind, str) and kind.startswith("catalog:"))):
        raise ValidationError(f"kind must be 'finite' or 'catalog:<id>', got {kind!r}")

    tolerance = doc.get("tolerance", DEFAULT_TOLERANCE)
    if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool) or tolerance <= 0:
        raise ValidationError("tolerance must be a positive number")
    cap = doc.get("groupSizeCap", DEFAULT_GROUP_SIZE_CAP)
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise ValidationError("groupSizeCap must be a positive integer")
    seed = doc.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ValidationError("seed must be an integer")

    raw_gens = doc.get("generators", [])
    if kind == "finite" and not raw_gens:
        raise ValidationError("kind=finite requires a nonempty generator list")
    if not isinstance(raw_gens, list):
        raise ValidationError("generators must be a list of matrices")
    gens = []
    for idx, raw in enumerate(raw_gens):
        g = _parse_matrix(raw, dim, idx)
        resid = num.orthogonality_residual(g)
        if resid > tolerance:
            raise ValidationError(
                f"generator {idx} is not orthogonal: ||g^T g - I||_max = "
                f"{resid:.3e} > tolerance {tolerance:.3e}"
            )
        g.setflags(write=False)
        gens.append(g)

    return RepresentationSpec(
        dimension=dim,
        generators=tuple(gens),
        kind=kind,
        tolerance=float(tolerance),
        group_size_cap=cap,
        seed=seed,
    )


def load_spec(path: str) -> RepresentationSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ValidationError(f"cannot read spec file {path!r}: {err}")
    return parse_spec(text)


class _DedupTable:
    """Grid-hash index over a growing list of matrices.

    Keys are the entries rounded to the 1e-6 grid. Lookups probe the
    alternate rounding of entries that sit near a cell midpoint, so copies of
    one element that straddle a boundary still collide; beyond
    2**_MAX_FLIP_PROBES boundary entries we fall back to a linear scan.
    """

    def __init__(self) -> None:
        self._buckets: dict[bytes, list[int]] = {}
        self._mats: list[np.ndarray] = []

    def __len__(self) -> int:
        return len(self._mats)

    @staticmethod
    def _keys_for(mat: np.ndarray) -> list[bytes]:
        q = mat / DEDUP_GRID
        base = np.rint(q)
        frac = q - base
        flips = np.argwhere(np.abs(np.abs(frac) - 0.5) < _BOUNDARY_BAND)
        base = base.astype(np.int64)
        keys = [base.tobytes()]
        if len(flips) == 0:
            return keys
        if len(flips) > _MAX_FLIP_PROBES:
            return []  # signal: caller must linear-scan
        for r in range(1, len(flips) + 1):
            for subset in combinations(range(len(flips)), r):
                alt = base.copy()
                for s in subset:
                    i, j = flips[s]
                    alt[i, j] += 1 if frac[i, j] > 0 else -1
                keys.append(alt.tobytes())
        return keys

    def _check(self, candidate: np.ndarray, idx: int) -> bool:
        dist = num.max_abs(candidate - self._mats[idx])
        if dist <= DEDUP_TOL:
            return True
        if dist <= DEDUP_GUARD * DEDUP_TOL:
            raise DedupAmbiguityError(
                f"two elements at max-norm distance {dist:.3e}, inside "
                f"({DEDUP_TOL:.0e}, {DEDUP_GUARD * DEDUP_TOL:.0e}]: "
                "dedup tolerance misconfiguration"
            )
        return False

    def find(self, candidate: np.ndarray) -> int | None:
        keys = self._keys_for(candidate)
        if not keys:
            for idx in range(len(self._mats)):
                if self._check(candidate, idx):
                    return idx
            return None
        seen: set[int] = set()
        for key in keys:
            for idx in self._buckets.get(key, ()):
                if idx in seen:
                    continue
                seen.add(idx)
                if self._check(candidate, idx):
                    return idx
        return None

    def insert(self, mat: np.ndarray) -> int:
        idx = len(self._mats)
        self._mats.append(mat)
        base = np.rint(mat / DEDUP_GRID).astype(np.int64).tobytes()
        self._buckets.setdefault(base, []).append(idx)
        return idx


@dataclass
class FiniteGroupData:
    """Deduplicated element list of a finite orthogonal matrix group.

    elements[identity_index] is the identity; the list order is the
    deterministic BFS insertion order. cayley_closed records that the
    closure terminated below the cap (BFS termination certifies closure
    under right multiplication by generators, hence under multiplication).
    """

    elements: np.ndarray  # (order, d, d)
    identity_index: int
    cayley_closed: bool
    generators: tuple[np.ndarray, ...]
    _table: _DedupTable = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        return int(self.elements.shape[1])

    def find(self, mat: np.ndarray) -> int | None:
        """Index of the stored element matching ``mat`` within dedup
        tolerance, or None."""
        return self._table.find(np.asarray(mat, dtype=float))

    def verify_closure(self, n_pairs: int, seed: int) -> float:
        """Spot-check: products of random element pairs match stored
        elements. Returns the max deviation over the sampled pairs."""
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(n_pairs):
            i, j = rng.integers(0, self.order, size=2)
            prod = self.elements[i] @ self.elements[j]
            idx = self.find(prod)
            if idx is None:
                raise DedupAmbiguityError(
                    "closure spot-check found a product matching no element"
                )
            worst = max(worst, num.max_abs(prod - self.elements[idx]))
        return worst

    @classmethod
    def from_elements(cls, elements, generators=(), identity_index: int | None = None,
                      cayley_closed: bool = True) -> "FiniteGroupData":
        """Index a list of matrices known to form a group (e.g. a restricted
        copy of an enumerated group)."""
        elements = np.asarray(elements, dtype=float)
        table = _DedupTable()
        for mat in elements:
            if table.find(mat) is not None:
                raise DedupAmbiguityError("duplicate element in from_elements input")
            table.insert(mat)
        if identity_index is None:
            eye = np.eye(elements.shape[1])
            identity_index = table.find(eye)
            if identity_index is None:
                raise ValidationError("element list does not contain the identity")
        return cls(
            elements=elements,
            identity_index=identity_index,
            cayley_closed=cayley_closed,
            generators=tuple(np.asarray(g, dtype=float) for g in generators),
            _table=table,
        )


def enumerate_group(spec: RepresentationSpec) -> FiniteGroupData:
    """Breadth-first closure of the generators under multiplication.

    Deterministic: the queue is FIFO and generators are applied in listed
    order, so element indices depend only on the spec. Raises
    GroupSizeCapError when the closure exceeds groupSizeCap and
    DedupAmbiguityError when two elements land in the dedup guard band.
    """
    if spec.kind != "finite":
        raise ValidationError("enumerate_group requires kind=finite")
    d = spec.dimension
    table = _DedupTable()
    elements: list[np.ndarray] = [np.eye(d)]
    table.insert(elements[0])
    head = 0
    while head < len(elements):
        current = elements[head]
        head += 1
        for gen in spec.generators:
            prod = current @ gen
            if table.find(prod) is None:
                if len(elements) >= spec.group_size_cap:
                    raise GroupSizeCapError(
                        f"group closure exceeded groupSizeCap={spec.group_size_cap}"
                    )
                table.insert(prod)
                elements.append(prod)

    stack = np.array(elements)
    worst = max(num.orthogonality_residual(g) for g in stack)
    if worst > DEDUP_TOL:
        raise ValidationError(
            f"enumerated element drifted from orthogonality: {worst:.3e} > {DEDUP_TOL:.0e}"
        )
    return FiniteGroupData(
        elements=stack,
        identity_index=0,
        cayley_closed=True,
        generators=spec.generators,
        _table=table,
    )


@dataclass(frozen=True)
class TrivialSplit:
    """Orthogonal splitting V = F + F_perp with F the common fixed subspace.

    fixed_basis: (d, f) orthonormal columns spanning F.
    complement_basis: (d, d-f) orthonormal columns spanning F_perp.
    restricted_generators: the generators conjugated into F_perp coordinates.
    """

    fixed_basis: np.ndarray
    complement_basis: np.ndarray
    restricted_generators: tuple[np.ndarray, ...]

    @property
    def fixed_dim(self) -> int:
        return int(self.fixed_basis.shape[1])

    @property
    def complement_dim(self) -> int:
        return int(self.complement_basis.shape[1])


def fixed_subspace(generators, dimension: int, *, tolerance: float = DEFAULT_TOLERANCE,
                   rank_tol: float | None = None) -> TrivialSplit:
    """Common fixed subspace F = {x : g x = x for all generators} and the
    induced split.

    F is the null space of the stacked (g - I); the complement basis comes
    from the same SVD, so both are orthonormal and mutually orthogonal.
    Restricted generators are checked to stay orthogonal within tolerance.
    """
    gens = [np.asarray(g, dtype=float) for g in generators]
    d = dimension
    if not gens:
        raise ValidationError("fixed_subspace requires at least one generator")
    stacked = np.vstack([g - np.eye(d) for g in gens])
    null_basis, range_basis = num.nullspace(stacked, rank_tol=rank_tol, what="fixed subspace")
    f = null_basis.shape[1]
    if f == 0:
        fixed = np.zeros((d, 0))
        complement = np.eye(d)
    elif f == d:
        fixed = np.eye(d)
        complement = np.zeros((d, 0))
    else:
        fixed = null_basis
        complement = range_basis

    for g in gens:
        if fixed.shape[1] and num.max_abs(g @ fixed - fixed) > max(tolerance, 1e-12):
            raise ValidationError("fixed-subspace residual exceeds tolerance")

    restricted = []
    for g in gens:
        r = complement.T @ g @ complement
        if r.size and num.orthogonality_residual(r) > max(tolerance, 1e-12):
            raise ValidationError("restricted generator lost orthogonality")
        restricted.append(r)
    return TrivialSplit(
        fixed_basis=fixed,
        complement_basis=complement,
        restricted_generators=tuple(restricted),
    )


def restrict_group(group: FiniteGroupData, split: TrivialSplit) -> FiniteGroupData:
    """The enumerated group conjugated into F_perp coordinates.

    The restriction map is injective (an element fixing F pointwise and
    acting trivially on F_perp is the identity), so order and indexing carry
    over unchanged.
    """
    basis = split.complement_basis
    if basis.shape[1] == group.dimension:
        return group
    restricted = np.einsum("ia,nij,jb->nab", basis, group.elements, basis)
    return FiniteGroupData.from_elements(
        restricted,
        generators=split.restricted_generators,
        identity_index=group.identity_index,
        cayley_closed=group.cayley_closed,
    )
