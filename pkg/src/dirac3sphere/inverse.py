"""Recover (a, b, c) up to permutation from spectral data.

Volume, scalar curvature and one discriminator determine the metric within
the homogeneous family:

* scal > 0, sphere or odd quotient structure: the fundamental tone mu.
  The elementary symmetric polynomials s_i of (a, b, c) follow from
  s3 = volume constant / vol, the quadratic 4 mu s2^2/s3 - 16 s2 - scal = 0
  (exactly one positive root), and mu = 2 s1 - s2^2/(2 s3).
* scal > 0, even quotient structure: the shift C.  Here the symmetric
  polynomials sigma_i of the squares are used: C = sigma2/(2 sqrt(sigma3)),
  scal = 8 (sigma1 - C^2).
* scal <= 0, any operator: the heat-trace combination
  a2~ = 8|Ric|^2 + 7|Riem|^2.  With Y = (a2~ - 101 scal^2)/576 one has
  Y = -scal sigma1 + 4 sigma2; for scal = 0 this gives sigma2 directly, for
  scal < 0 eliminating sigma1 leaves a quadratic in sigma2 whose right-hand
  side is strictly decreasing, hence at most one positive root.

The triple itself is read off as the positive roots of the monic cubic with
those symmetric polynomials.  Every route recomputes its inputs from the
recovered triple and attaches the relative residuals.
"""

import math
from dataclasses import dataclass

from .errors import InconsistentInputError, WrongRegimeError
from .metric import S3, SO3_NONTRIVIAL, SO3_TRIVIAL, Metric, invariants, volume

_PI2 = math.pi ** 2
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ReconstructionResult:
    """Recovered triple (descending), intermediates, and forward residuals."""

    triple: tuple
    manifold: str
    branch: str
    sym_polys: dict
    residuals: dict

    @property
    def max_residual(self):
        return max(self.residuals.values())


def _cubic_eval(t, s1, s2, s3):
    return ((t - s1) * t + s2) * t - s3


def cubic_positive_roots(s1, s2, s3, rtol=1e-9):
    """The three roots of t^3 - s1 t^2 + s2 t - s3, all required real and
    positive within relative ``rtol``; returned descending.

    Trigonometric evaluation on the depressed cubic locates the roots; the
    best-separated one is Newton-polished and the remaining pair is read off
    the deflated quadratic, whose midpoint stays well conditioned even at a
    double root (where direct evaluation cannot do better than sqrt(eps)).
    """
    if not (s1 > 0 and s2 > 0 and s3 > 0):
        raise InconsistentInputError(f"symmetric polynomials must be positive, got {(s1, s2, s3)!r}")
    shift = s1 / 3.0
    p = s2 - s1 * s1 / 3.0
    q = -2.0 * s1 ** 3 / 27.0 + s1 * s2 / 3.0 - s3
    if p > rtol * shift * shift:
        raise InconsistentInputError("cubic has a complex conjugate pair, no metric matches the data")
    if p >= 0.0 or math.sqrt(-p / 3.0) <= 4.0 * _EPS * shift:
        # (near-)triple root at the centroid
        roots = [shift, shift, shift]
    else:
        r = math.sqrt(-p / 3.0)
        # rounding can push |arg| past 1 near multiple roots; clamp and let
        # the deflated discriminant below reject genuinely complex pairs
        arg = min(1.0, max(-1.0, 3.0 * q / (2.0 * p * r)))
        phi = math.acos(arg)
        trig = [2.0 * r * math.cos((phi - 2.0 * math.pi * j) / 3.0) + shift for j in range(3)]
        # most isolated root: well conditioned, safe to polish directly
        iso = max(range(3), key=lambda i: min(abs(trig[i] - trig[j]) for j in range(3) if j != i))
        t = trig[iso]
        f = _cubic_eval(t, s1, s2, s3)
        for _ in range(3):
            fp = (3.0 * t - 2.0 * s1) * t + s2
            if fp == 0.0:
                break
            t_new = t - f / fp
            f_new = _cubic_eval(t_new, s1, s2, s3)
            if abs(f_new) >= abs(f):
                break
            t, f = t_new, f_new
        pair_sum = s1 - t
        pair_mid = 0.5 * pair_sum
        disc4 = pair_mid * pair_mid - s3 / t if t != 0.0 else -1.0
        if disc4 < -rtol * max(pair_mid * pair_mid, abs(s3 / t) if t else 1.0):
            raise InconsistentInputError("cubic has a complex conjugate pair, no metric matches the data")
        gap = math.sqrt(max(disc4, 0.0))
        roots = [t, pair_mid + gap, pair_mid - gap]
        s2_back = t * pair_sum + s3 / t
        if abs(s2_back - s2) > 1e-6 * max(s2, shift * shift):
            raise InconsistentInputError("no real positive triple reproduces the symmetric polynomials")
    if min(roots) <= rtol * shift:
        raise InconsistentInputError(f"cubic root {min(roots)!r} is not positive")
    return tuple(sorted(roots, reverse=True))


def _rel(x, y, floor):
    return abs(x - y) / max(abs(x), abs(y), floor)


def _require(cond, message):
    if not cond:
        raise InconsistentInputError(message)


def reconstruct_positive_mu(vol, scal, mu, manifold=S3):
    """Positive-curvature reconstruction from the fundamental tone mu."""
    if manifold not in (S3, SO3_NONTRIVIAL):
        raise WrongRegimeError(f"mu determines the metric on {S3!r} or {SO3_NONTRIVIAL!r}, not {manifold!r}")
    if scal <= 0:
        raise WrongRegimeError("mu-based reconstruction requires scal > 0")
    _require(vol > 0, "volume must be positive")
    _require(mu > 0, "mu must be positive")
    s3 = (2.0 * _PI2 if manifold == S3 else _PI2) / vol
    quad_lead = 4.0 * mu / s3
    disc = 256.0 + 4.0 * quad_lead * scal
    s2 = (16.0 + math.sqrt(disc)) / (2.0 * quad_lead)
    s1 = 0.5 * (mu + s2 * s2 / (2.0 * s3))
    triple = cubic_positive_roots(s1, s2, s3)
    rec = Metric(*triple)
    floor = s3 ** (1.0 / 3.0)
    residuals = {
        "volume": _rel(volume(rec, manifold), vol, floor),
        "scal": _rel(rec.scal, scal, floor ** 2),
        "mu": _rel(rec.mu, mu, floor),
    }
    return ReconstructionResult(
        triple=triple,
        manifold=manifold,
        branch="mu",
        sym_polys={"s1": s1, "s2": s2, "s3": s3},
        residuals=residuals,
    )


def reconstruct_positive_C(vol, scal, C, manifold=SO3_TRIVIAL):
    """Positive-curvature reconstruction from the shift C (even structure)."""
    if manifold != SO3_TRIVIAL:
        raise WrongRegimeError(f"C determines the metric on {SO3_TRIVIAL!r} only, not {manifold!r}")
    if scal <= 0:
        raise WrongRegimeError("C-based reconstruction requires scal > 0")
    _require(vol > 0, "volume must be positive")
    _require(C > 0, "C must be positive")
    sqrt_sigma3 = _PI2 / vol
    sigma3 = sqrt_sigma3 ** 2
    sigma2 = 2.0 * C * sqrt_sigma3
    sigma1 = scal / 8.0 + C * C
    squares = cubic_positive_roots(sigma1, sigma2, sigma3)
    triple = tuple(math.sqrt(t) for t in squares)
    rec = Metric(*triple)
    floor = sigma3 ** (1.0 / 6.0)
    residuals = {
        "volume": _rel(volume(rec, manifold), vol, floor),
        "scal": _rel(rec.scal, scal, floor ** 2),
        "C": _rel(rec.C, C, floor),
    }
    return ReconstructionResult(
        triple=triple,
        manifold=manifold,
        branch="C",
        sym_polys={"sigma1": sigma1, "sigma2": sigma2, "sigma3": sigma3},
        residuals=residuals,
    )


def reconstruct_nonpositive(vol, scal, a2_tilde, manifold=S3):
    """Nonpositive-curvature reconstruction from a2~ = 8|Ric|^2 + 7|Riem|^2.

    Valid for every operator; the scal = 0 branch is taken when |scal| falls
    below 1e-10 times the volume-derived scale sigma3^(1/3).
    """
    if manifold not in (S3, SO3_TRIVIAL, SO3_NONTRIVIAL):
        raise WrongRegimeError(f"unknown manifold {manifold!r}")
    _require(vol > 0, "volume must be positive")
    sqrt_sigma3 = (2.0 * _PI2 if manifold == S3 else _PI2) / vol
    sigma3 = sqrt_sigma3 ** 2
    zero_scale = 1e-10 * sigma3 ** (1.0 / 3.0)
    if scal > zero_scale:
        raise WrongRegimeError("a2~-based reconstruction requires scal <= 0")
    Y = (a2_tilde - 101.0 * scal * scal) / 576.0
    if abs(scal) <= zero_scale:
        branch = "a2tilde-zero"
        sigma2 = Y / 4.0
    else:
        branch = "a2tilde-negative"
        # 2 (scal/sigma3) s^2 - 32 s + (scal^2 + 8Y) = 0, written in the
        # root form that stays stable as scal -> 0-
        lead = 2.0 * scal / sigma3
        const = scal * scal + 8.0 * Y
        disc = 1024.0 - 4.0 * lead * const
        _require(disc >= 0, "quadratic for sigma2 has no real root")
        qq = 0.5 * (32.0 + math.sqrt(disc))
        sigma2 = const / qq
    _require(sigma2 > 0, "no positive sigma2 matches the data")
    sigma1 = (scal + 2.0 * sigma2 * sigma2 / sigma3) / 8.0
    _require(sigma1 > 0, "no positive sigma1 matches the data")
    squares = cubic_positive_roots(sigma1, sigma2, sigma3)
    triple = tuple(math.sqrt(t) for t in squares)
    rec = Metric(*triple)
    floor = sigma3 ** (1.0 / 6.0)
    residuals = {
        "volume": _rel(volume(rec, manifold), vol, floor),
        "scal": _rel(rec.scal, scal, floor ** 2),
        "a2_tilde": _rel(invariants(rec).a2_tilde, a2_tilde, floor ** 4),
    }
    return ReconstructionResult(
        triple=triple,
        manifold=manifold,
        branch=branch,
        sym_polys={"sigma1": sigma1, "sigma2": sigma2, "sigma3": sigma3, "Y": Y},
        residuals=residuals,
    )


def reconstruct(manifold, vol, scal, mu=None, C=None, a2_tilde=None):
    """Dispatch on the single provided discriminator."""
    given = [name for name, v in (("mu", mu), ("C", C), ("a2_tilde", a2_tilde)) if v is not None]
    if len(given) != 1:
        raise ValueError(f"exactly one of mu, C, a2_tilde must be given, got {given or 'none'}")
    if mu is not None:
        return reconstruct_positive_mu(vol, scal, mu, manifold)
    if C is not None:
        return reconstruct_positive_C(vol, scal, C, manifold)
    return reconstruct_nonpositive(vol, scal, a2_tilde, manifold)
