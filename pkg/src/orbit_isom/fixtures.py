"""Built-in finite representation fixtures.

Eight small orthogonal representations exercising every branch of the
pipeline: cyclic rotation planes (complex type), dihedral boundary cases,
the quaternion group acting by left multiplication (quaternionic type),
sign representations with multiplicity (real type with and without the
discrete center), a fixed line, the trivial group, and a mixed product.

The documents mirror the on-disk fixture files (fixtures/<name>.json);
`fixture_document` is the module-level source of truth so that the
verification suites run without touching the filesystem.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ValidationError
from .repr_model import RepresentationSpec, parse_spec


def _rot(theta: float) -> list[list[float]]:
    c, s = math.cos(theta), math.sin(theta)
    return [[c, -s], [s, c]]


def _eye(n: int) -> list[list[float]]:
    return [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]


def _neg(m: list[list[float]]) -> list[list[float]]:
    return [[-v for v in row] for row in m]


def _block(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    n, m = len(a), len(b)
    out = [[0.0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return out


# Left multiplication by the quaternion units i and j on R^4 = H.
_L_I = [[0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0]]
_L_J = [[0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0]]

_REFLECTION = [[1.0, 0.0], [0.0, -1.0]]

_GENERATORS: dict[str, tuple[int, list[list[list[float]]]]] = {
    "c5": (2, [_rot(2.0 * math.pi / 5.0)]),
    "d4": (2, [_rot(math.pi / 2.0), _REFLECTION]),
    "q8": (4, [_L_I, _L_J]),
    "pm1-r4": (4, [_neg(_eye(4))]),
    "pm1-r3": (3, [_neg(_eye(3))]),
    "c3-fix": (3, [_block(_rot(2.0 * math.pi / 3.0), _eye(1))]),
    "trivial-r3": (3, [_eye(3)]),
    "c3xd4-r4": (4, [
        _block(_rot(2.0 * math.pi / 3.0), _eye(2)),
        _block(_eye(2), _rot(math.pi / 2.0)),
        _block(_eye(2), _REFLECTION),
    ]),
}

FIXTURE_NAMES: tuple[str, ...] = tuple(_GENERATORS)


def fixture_document(name: str) -> dict:
    """JSON-ready spec document for a built-in fixture (decimal-string
    matrix entries, exactly as the on-disk files store them)."""
    try:
        dim, gens = _GENERATORS[name]
    except KeyError:
        raise ValidationError(
            f"unknown fixture {name!r}; known: {sorted(_GENERATORS)}"
        ) from None
    return {
        "dimension": dim,
        "kind": "finite",
        "generators": [[[repr(float(v)) for v in row] for row in g] for g in gens],
    }


def fixture_spec(name: str) -> RepresentationSpec:
    return parse_spec(fixture_document(name))


def fixture_json(name: str) -> str:
    """Serialized document, byte-identical to fixtures/<name>.json."""
    return json.dumps(fixture_document(name), indent=2) + "\n"


def write_fixture_files(directory: str | Path) -> list[Path]:
    """Materialize every fixture document under ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in FIXTURE_NAMES:
        path = directory / f"{name}.json"
        path.write_text(fixture_json(name))
        written.append(path)
    return written
