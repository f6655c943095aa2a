"""Shared numerical kernels.

Rank decisions use singular-value thresholding at 100*eps*||A|| with a guard
band: a singular value inside (threshold, 100*threshold] aborts instead of
guessing. The matrix exponential is scaling-and-squaring around a degree-16
Taylor kernel evaluated at norm <= 0.5.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import RankAmbiguityError

EPS = float(np.finfo(np.float64).eps)
RANK_GUARD = 100.0


def max_abs(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=float)))


def orthogonality_residual(g: np.ndarray) -> float:
    """Max-norm of g^T g - I."""
    g = np.asarray(g, dtype=float)
    return max_abs(g.T @ g - np.eye(g.shape[0]))


def split_spectrum(singular_values: np.ndarray, rank_tol: float, what: str) -> int:
    """Rank from a sorted (descending) singular value array, guard-banded."""
    s = np.asarray(singular_values, dtype=float)
    in_band = (s > rank_tol) & (s <= RANK_GUARD * rank_tol)
    if np.any(in_band):
        raise RankAmbiguityError(
            f"{what}: singular value {s[in_band][0]:.3e} inside the guard band "
            f"({rank_tol:.3e}, {RANK_GUARD * rank_tol:.3e}]; tighten the input"
        )
    return int(np.sum(s > rank_tol))


def nullspace(a: np.ndarray, *, rank_tol: float | None = None, what: str = "system"):
    """Orthonormal columns spanning the numerical null space of ``a``.

    Returns ``(null_basis, range_basis)`` where the columns of the two
    matrices are orthonormal and jointly span the domain. ``rank_tol``
    defaults to 100*eps*||a||_2.
    """
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    if m == 0 or n == 0:
        return np.eye(n), np.zeros((n, 0))
    _, s, vh = np.linalg.svd(a)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return np.eye(n), np.zeros((n, 0))
    tol = rank_tol if rank_tol is not None else RANK_GUARD * EPS * smax
    rank = split_spectrum(s, tol, what)
    return vh[rank:].T.copy(), vh[:rank].T.copy()


def span_basis(mats: np.ndarray, *, rank_tol: float | None = None, what: str = "span"):
    """Orthonormal (Frobenius) basis of span{mats[k]} as a (r, d, d) stack."""
    mats = np.asarray(mats, dtype=float)
    if mats.size == 0:
        return mats.reshape((0,) + mats.shape[1:])
    k = mats.shape[0]
    flat = mats.reshape(k, -1)
    _, s, vh = np.linalg.svd(flat, full_matrices=False)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return mats[:0]
    tol = rank_tol if rank_tol is not None else RANK_GUARD * EPS * smax
    rank = split_spectrum(s, tol, what)
    return vh[:rank].reshape((rank,) + mats.shape[1:]).copy()


# Degree-16 Taylor coefficients 1/k!.
_TAYLOR = [1.0 / math.factorial(k) for k in range(17)]


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential, dependency-free.

    Scale so the Frobenius norm is <= 0.5, run the degree-16 Taylor series by
    Horner's rule, square back. The truncation error at norm 0.5 is below
    0.5**17/17! ~ 2e-18, under roundoff.
    """
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    nrm = frobenius(a)
    squarings = 0 if nrm <= 0.5 else int(math.ceil(math.log2(nrm / 0.5)))
    x = a / (2.0 ** squarings)
    result = np.eye(d) * _TAYLOR[16]
    for k in range(15, -1, -1):
        result = result @ x + np.eye(d) * _TAYLOR[k]
    for _ in range(squarings):
        result = result @ result
    return result


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def golden_minimize(f, lo: float, hi: float, *, xtol: float = 1e-11, max_iter: int = 120):
    """Golden-section minimum of a unimodal scalar function on [lo, hi].

    Returns (x, f(x)). Also samples the endpoints so an edge minimum cannot
    be missed when the bracket is not interior.
    """
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while (b - a) > xtol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        it += 1
    candidates = [(f(lo), lo), (f1, x1), (f2, x2), (f(hi), hi)]
    fx, x = min(candidates, key=lambda p: p[0])
    return x, fx


def coordinate_descent(f, params: np.ndarray, spans: np.ndarray, *,
                       sweeps: int = 6, xtol: float = 1e-12,
                       target: float | None = None) -> tuple[np.ndarray, float]:
    """Cyclic per-coordinate golden-section descent.

    ``spans`` are per-axis initial bracket half-widths (grid spacings).
    Brackets shrink toward each accepted move; stops early once a sweep
    yields no improvement, or, when ``target`` is given, once f < target.
    """
    p = np.array(params, dtype=float)
    spans = np.array(spans, dtype=float)
    best = f(p)
    for _ in range(sweeps):
        improved = False
        for i in range(p.size):
            def slice_f(x, i=i):
                q = p.copy()
                q[i] = x
                return f(q)
            x, fx = golden_minimize(slice_f, p[i] - spans[i], p[i] + spans[i], xtol=xtol)
            if fx < best - 1e-15:
                moved = abs(x - p[i])
                p[i] = x
                best = fx
                spans[i] = max(4.0 * moved, 64.0 * xtol)
                improved = True
        if target is not None and best < target:
            break
        if not improved:
            spans *= 0.25
            if np.all(spans < 8.0 * xtol):
                break
    return p, best


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    n = np.linalg.norm(v)
    while n < 1e-12:
        v = rng.standard_normal(dim)
        n = np.linalg.norm(v)
    return v / n
