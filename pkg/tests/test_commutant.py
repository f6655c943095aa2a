import math

import numpy as np
import pytest

from conftest import rot2
from orbit_isom import _numerics as num
from orbit_isom.commutant import (
    commutant_basis,
    commutant_center,
    isotypic_split,
    sample_equivariant_isometry,
)
from orbit_isom.fixtures import FIXTURE_NAMES, fixture_document
from orbit_isom.repr_model import enumerate_group, parse_spec

# dim of the commutant algebra on the full representation space,
# checked against sum n_i^2 t_i + (fixed dim)^2 by hand
COMMUTANT_DIMS = {
    "c5": 2, "d4": 1, "q8": 4, "pm1-r4": 16, "pm1-r3": 9,
    "c3-fix": 3, "trivial-r3": 9, "c3xd4-r4": 3,
}


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_commutant_dimension(name, finite_group):
    group = finite_group(name)
    basis = commutant_basis(group.generators)
    assert len(basis) == COMMUTANT_DIMS[name]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_commutant_elements_commute(name, finite_group):
    group = finite_group(name)
    for a in commutant_basis(group.generators):
        for g in group.elements:
            assert num.max_abs(a @ g - g @ a) < 1e-10


def test_commutant_basis_orthonormal(finite_group):
    basis = commutant_basis(finite_group("q8").generators)
    gram = np.einsum("aij,bij->ab", basis, basis)
    assert np.allclose(gram, np.eye(len(basis)), atol=1e-12)


def test_commutant_center_of_q8_is_scalars():
    # commutant of Q8 left multiplication is the right-multiplication
    # quaternion algebra; its center is the scalars
    group = enumerate_group(parse_spec(fixture_document("q8")))
    basis = commutant_basis(group.generators)
    center = commutant_center(group.generators, basis)
    assert len(center) == 1
    c = center[0]
    assert num.max_abs(c - c[0, 0] * np.eye(4)) < 1e-10


# (component count, multiplicities) after splitting the commutant over
# the moving part of the representation
SPLIT_SHAPE = {
    "c5": (1, [1]), "d4": (1, [1]), "q8": (1, [1]),
    "pm1-r4": (1, [4]), "pm1-r3": (1, [3]), "c3-fix": (1, [1]),
    "c3xd4-r4": (2, [1, 1]),
}

# fs_sum is the normalized indicator n*nu per component
FS_SUMS = {
    "c5": [0.0], "d4": [1.0], "q8": [-1.0],
    "pm1-r4": [4.0], "pm1-r3": [3.0], "c3-fix": [0.0],
    "c3xd4-r4": [0.0, 1.0],
}

SCHUR_TYPES = {
    "c5": ["Complex"], "d4": ["Real"], "q8": ["Quaternionic"],
    "pm1-r4": ["Real"], "pm1-r3": ["Real"], "c3-fix": ["Complex"],
    "c3xd4-r4": ["Complex", "Real"],
}


@pytest.mark.parametrize("name", sorted(SPLIT_SHAPE))
def test_isotypic_components(name, memo):
    result = memo.analysis(name)
    comps = result.equiv.components
    count, mults = SPLIT_SHAPE[name]
    assert len(comps) == count
    assert [c.multiplicity for c in comps] == mults
    assert [c.schur_type for c in comps] == SCHUR_TYPES[name]
    for c, want in zip(comps, FS_SUMS[name]):
        assert abs(c.fs_sum - want) < 1e-6


def test_isotypic_split_bases_span_space(finite_group):
    group = finite_group("c3xd4-r4")
    basis = commutant_basis(group.generators)
    parts = isotypic_split(basis, group.generators, seed=0)
    total = sum(p.dimension for p in parts)
    assert total == 4
    stacked = np.hstack([p.basis for p in parts])
    assert np.allclose(stacked.T @ stacked, np.eye(4), atol=1e-10)


def test_isotypic_projectors_commute_with_group(finite_group):
    group = finite_group("c3xd4-r4")
    basis = commutant_basis(group.generators)
    for part in isotypic_split(basis, group.generators, seed=0):
        proj = part.projector
        for g in group.elements:
            assert num.max_abs(proj @ g - g @ proj) < 1e-9


def test_expm_matches_rotation():
    theta = 0.7318
    gen = np.array([[0.0, -theta], [theta, 0.0]])
    assert num.max_abs(num.expm(gen) - rot2(theta)) < 1e-14


def test_expm_orthogonal_on_random_skew():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.standard_normal((5, 5))
        s = a - a.T
        e = num.expm(s)
        assert num.orthogonality_residual(e) < 1e-12
        assert num.max_abs(e @ num.expm(-s) - np.eye(5)) < 1e-12


@pytest.mark.parametrize("name", ["c5", "q8", "pm1-r4", "c3xd4-r4"])
def test_sampled_isometry_is_equivariant(name, memo, finite_group):
    result = memo.analysis(name)
    x = sample_equivariant_isometry(result.equiv, 0.8, seed=11)
    assert num.orthogonality_residual(x) < 1e-9
    for g in result.context.generators:
        assert num.max_abs(x @ g - g @ x) < 1e-9


def test_sampled_isometry_deterministic(memo):
    equiv = memo.analysis("q8").equiv
    a = sample_equivariant_isometry(equiv, 0.5, seed=3)
    b = sample_equivariant_isometry(equiv, 0.5, seed=3)
    c = sample_equivariant_isometry(equiv, 0.5, seed=4)
    assert np.array_equal(a, b)
    assert num.max_abs(a - c) > 1e-3


def test_sampled_isometry_zero_time_is_identity(memo):
    equiv = memo.analysis("q8").equiv
    x = sample_equivariant_isometry(equiv, 0.0, seed=3)
    assert num.max_abs(x - np.eye(4)) < 1e-12


@pytest.mark.parametrize("name", ["c5", "d4", "q8", "c3xd4-r4"])
def test_lie_basis_skew_and_orthonormal(name, memo):
    equiv = memo.analysis(name).equiv
    basis = equiv.lie_basis
    assert basis.shape[0] == equiv.total_dim
    for a in basis:
        assert num.max_abs(a + a.T) < 1e-12
    if len(basis):
        gram = np.einsum("aij,bij->ab", basis, basis)
        assert np.allclose(gram, np.eye(len(basis)), atol=1e-12)
