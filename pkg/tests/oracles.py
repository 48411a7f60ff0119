"""Independent brute-force oracles used to pin expected values.

These deliberately avoid the production code paths: the simplex oracle
is a grid search (no bisection), the mixture oracle is a grid search
over triple supports (no linear algebra), and the entropy inverse is a
dense scan.  Grid resolution h bounds the value error by h times the
largest capacity factor, which the comparing tests account for.
"""

from __future__ import annotations

import itertools

import numpy as np


def simplex_grid_maxmin(alphas, caps, step):
    """max over the probability simplex of min_i (caps_i * b_i + alphas_i).

    Exhaustive grid with resolution ``step`` over the free coordinates;
    supports 1 to 4 dimensions (enough for small oracle instances).
    """
    alphas = list(alphas)
    caps = list(caps)
    m = len(alphas)
    if m == 1:
        return caps[0] + alphas[0]
    ax = np.arange(0.0, 1.0 + step / 2, step)
    if m == 2:
        b1 = ax
        b2 = 1.0 - b1
        vals = np.minimum(caps[0] * b1 + alphas[0], caps[1] * b2 + alphas[1])
        return float(vals.max())
    if m == 3:
        b1, b2 = np.meshgrid(ax, ax, indexing="ij")
        b3 = 1.0 - b1 - b2
        ok = b3 >= -1e-12
        vals = np.minimum.reduce(
            [
                caps[0] * b1 + alphas[0],
                caps[1] * b2 + alphas[1],
                caps[2] * np.maximum(b3, 0.0) + alphas[2],
            ]
        )
        return float(vals[ok].max())
    if m == 4:
        best = -np.inf
        b2g, b3g = np.meshgrid(ax, ax, indexing="ij")
        for b1 in ax:
            b4 = 1.0 - b1 - b2g - b3g
            ok = b4 >= -1e-12
            if not ok.any():
                continue
            vals = np.minimum.reduce(
                [
                    np.full_like(b2g, caps[0] * b1 + alphas[0]),
                    caps[1] * b2g + alphas[1],
                    caps[2] * b3g + alphas[2],
                    caps[3] * np.maximum(b4, 0.0) + alphas[3],
                ]
            )
            best = max(best, float(vals[ok].max()))
        return best
    raise ValueError("oracle supports at most 4 simplex dimensions")


def lambda_grid_best(points, M_w, M_s, step):
    """Grid-search mixture bound: max sum(lam R) over lam in the simplex
    grid with both budgets respected; triple supports cover the optimum
    (grids include 0, so smaller supports are included).

    ``points`` is a sequence of (R, M_w, M_s) triples.  Returns -inf when
    nothing is feasible.
    """
    pts = [tuple(p) for p in points]
    n = len(pts)
    ax = np.arange(0.0, 1.0 + step / 2, step)
    l1, l2 = np.meshgrid(ax, ax, indexing="ij")
    l3 = 1.0 - l1 - l2
    ok = l3 >= -1e-12
    l3 = np.maximum(l3, 0.0)
    best = -np.inf
    for i, j, k in itertools.combinations(range(n), 3):
        ri, wi, si = pts[i]
        rj, wj, sj = pts[j]
        rk, wk, sk = pts[k]
        feas = (
            ok
            & (l1 * wi + l2 * wj + l3 * wk <= M_w + 1e-12)
            & (l1 * si + l2 * sj + l3 * sk <= M_s + 1e-12)
        )
        if feas.any():
            vals = l1 * ri + l2 * rj + l3 * rk
            best = max(best, float(vals[feas].max()))
    return best


def entropy_inverse_scan(h, samples=2_000_001):
    """p in [0, 1/2] with binary entropy closest to h, dense scan."""
    ps = np.linspace(1e-9, 0.5, samples)
    hs = -(ps * np.log2(ps) + (1.0 - ps) * np.log2(1.0 - ps))
    return float(ps[int(np.argmin(np.abs(hs - h)))])


def affine_maxmin_grid(lines, step=1e-6):
    """max over beta in [0,1] of min of affine a*beta+b, by dense grid."""
    ax = np.arange(0.0, 1.0 + step / 2, step)
    vals = np.minimum.reduce([a * ax + b for a, b in lines])
    return float(vals.max())
