"""Eigenvalues of symmetrizable real tridiagonal matrices.

The level blocks are diagonally similar to symmetric tridiagonal matrices
because paired off-diagonal entries always share their sign.  Eigenvalues
are located by Sturm-count bisection inside Gershgorin brackets: for a
shift x the number of negative pivots of the LDL^T recurrence

    q_0 = d_0 - x,   q_i = d_i - x - e_{i-1}^2 / q_{i-1}

equals the number of eigenvalues below x.  Bisection on these counts is
deterministic, certified by construction, and immune to clustering.

Sizes one and two short-circuit to exact closed forms; everything larger
runs the vectorized bisection (all brackets of one irreducible sub-block
advance together).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError

_SAFMIN = float(np.finfo(float).tiny)
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class SymmetrizedTridiagonal:
    """Symmetric tridiagonal carrier of a block's spectrum.

    ``offdiag[k]`` is sqrt(sub[k] * sup[k]) of the source block; diagonal
    similarity leaves the spectrum untouched.  ``boundaries`` lists the
    indices with vanishing off-diagonal, where the matrix decouples into
    irreducible sub-blocks.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    boundaries: tuple

    @property
    def size(self):
        return len(self.diag)

    def irreducible_ranges(self):
        starts = [0] + [i + 1 for i in self.boundaries]
        ends = [i + 1 for i in self.boundaries] + [self.size]
        return list(zip(starts, ends))

    def infnorm(self):
        r = np.abs(self.diag).copy()
        if self.size > 1:
            r[1:] += self.offdiag
            r[:-1] += self.offdiag
        return float(r.max())

    def to_dense(self):
        M = np.diag(self.diag)
        if self.size > 1:
            M += np.diag(self.offdiag, -1) + np.diag(self.offdiag, 1)
        return M


def symmetrize(block):
    """Diagonal-similarity reduction of a block to symmetric tridiagonal form.

    Requires sub[k]*sup[k] >= 0 with joint vanishing; a violation means the
    block was not produced by the level recurrences and raises
    :class:`ConsistencyError`.
    """
    sub = np.asarray(block.sub, dtype=float)
    sup = np.asarray(block.sup, dtype=float)
    prod = sub * sup
    if np.any(prod < 0.0):
        k = int(np.argmin(prod))
        raise ConsistencyError(
            f"off-diagonal pair at {k} has negative product {prod[k]!r}; block is not symmetrizable"
        )
    if np.any((sub == 0.0) != (sup == 0.0)):
        raise ConsistencyError("off-diagonal entries do not vanish jointly")
    off = np.sqrt(prod)
    boundaries = tuple(int(i) for i in np.nonzero(off == 0.0)[0])
    return SymmetrizedTridiagonal(
        diag=np.asarray(block.diag, dtype=float).copy(),
        offdiag=off,
        boundaries=boundaries,
    )


def default_tolerance(t):
    """Scale-aware absolute tolerance 1e-12 * (1 + max-norm)."""
    return 1e-12 * (1.0 + t.infnorm())


def _pivmin(e2):
    return _SAFMIN * max(1.0, float(e2.max()) if len(e2) else 1.0)


def _counts_vec(d, e2, xs, pivmin):
    """Number of eigenvalues below each shift in ``xs`` (vectorized)."""
    q = d[0] - xs
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0.0).astype(np.int64)
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0.0
    return count


def _count_scalar(d, e2, x, pivmin):
    # plain-float loop; hot path of the level sweeps
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def _eig_two(d0, d1, e):
    mid = 0.5 * (d0 + d1)
    rad = math.hypot(0.5 * (d0 - d1), e)
    return mid - rad, mid + rad


def _bisect_range(d, e, tol):
    m = len(d)
    e2 = e * e
    pivmin = _pivmin(e2)
    radius = np.zeros(m)
    radius[1:] += e
    radius[:-1] += e
    lo = float((d - radius).min()) - tol
    hi = float((d + radius).max()) + tol
    if hi <= lo:
        hi = lo + tol
    steps = max(1, min(_MAX_BISECTIONS, int(math.ceil(math.log2(max((hi - lo) / tol, 2.0)))) + 1))
    los = np.full(m, lo)
    his = np.full(m, hi)
    idx = np.arange(m)
    for _ in range(steps):
        mids = 0.5 * (los + his)
        below = _counts_vec(d, e2, mids, pivmin) > idx
        his = np.where(below, mids, his)
        los = np.where(below, los, mids)
    return 0.5 * (los + his)


def eigenvalues(t, tol=None):
    """All eigenvalues of ``t``, ascending, each within ``tol`` of the truth.

    Degenerate clusters come out as repeated values; multiplicities are the
    caller's business (the Sturm counts guarantee the right number of values
    in every bracket).
    """
    if tol is None:
        tol = default_tolerance(t)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    out = []
    for s, e in t.irreducible_ranges():
        d = t.diag[s:e]
        if e - s == 1:
            out.append([float(d[0])])
        elif e - s == 2:
            out.append(_eig_two(d[0], d[1], t.offdiag[s]))
        else:
            out.append(_bisect_range(d, t.offdiag[s:e - 1], tol))
    return np.sort(np.concatenate([np.asarray(v, dtype=float) for v in out]))


def count_below(t, x):
    """Number of eigenvalues of ``t`` strictly below the shift ``x``."""
    total = 0
    for s, e in t.irreducible_ranges():
        d = t.diag[s:e]
        if e - s == 1:
            total += 1 if d[0] < x else 0
            continue
        e2 = t.offdiag[s:e - 1] ** 2
        total += _count_scalar(d.tolist(), e2.tolist(), x, _pivmin(e2))
    return total


def _min_abs_range(d, e, tol):
    m = len(d)
    if m == 1:
        return abs(float(d[0]))
    if m == 2:
        lo2, hi2 = _eig_two(d[0], d[1], e[0])
        return min(abs(lo2), abs(hi2))
    e2 = (e * e).tolist()
    dl = d.tolist()
    pivmin = _pivmin(e * e)
    hi = float(np.abs(d).max() + 2.0 * np.abs(e).max()) + tol
    lo = 0.0
    steps = max(1, min(_MAX_BISECTIONS, int(math.ceil(math.log2(max(hi / tol, 2.0)))) + 1))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        inside = _count_scalar(dl, e2, mid, pivmin) - _count_scalar(dl, e2, -mid, pivmin)
        if inside >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def min_abs_eigenvalue(block, tol=None):
    """Smallest absolute eigenvalue of a block, within ``tol``.

    Works on the Sturm counts directly (number of eigenvalues in (-s, s)),
    so no full spectrum is computed.
    """
    t = symmetrize(block)
    if tol is None:
        tol = default_tolerance(t)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    best = math.inf
    for s, e in t.irreducible_ranges():
        best = min(best, _min_abs_range(t.diag[s:e], t.offdiag[s:e - 1], tol))
    return best
