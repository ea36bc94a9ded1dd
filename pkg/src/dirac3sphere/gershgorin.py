"""Row-wise lower bounds for the squared level blocks.

The squared blocks are pentadiagonal with entries in closed form; the left
endpoints of their Gershgorin intervals bound every eigenvalue of the squared
level operator from below.  Under the ordering a >= b >= c the absolute
values resolve and the endpoints collapse to two polynomial families G and
G~, linked by the reflection G(n, k) = G~(n, n-k).  The increment
G(n+2, k+1) - G(n, k) is independent of k and strictly positive for positive
scalar curvature, which propagates the base-case inequalities

    G(0,0) = C^2            G(n,n) > C^2  (n >= 1)
    G(n,0) > C^2  (n >= 6)  G(n,1) > C^2  (n >= 4)
    G(1,0) = mu^2           G(5,0) > mu^2

to every level.  ``base_cases`` replays those inequalities numerically with
margins; the closed forms sort the metric internally (an isometric
relabeling) and record the permutation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, ConsistencyError, UncertifiableError
from .metric import POSITIVE, scal_sign_classification

_EQ_RTOL = 1e-12
_STRICT_RTOL = 1e-12


def squared_row_entries(m, n, tag, k):
    """Row k of the squared level-n block: entries (k, k-2) .. (k, k+2).

    Valid for any metric ordering; out-of-range positions evaluate to zero
    through the formulas themselves.  Odd rows flip the signs of a and b,
    tag "B" swaps the parities.
    """
    if not 0 <= k <= n:
        raise ValueError(f"row index {k} outside 0..{n}")
    a, b, c = m.triple()
    C = m.C
    if (k % 2 == 0) != (tag == "A"):
        a, b = -a, -b
    em2 = (c - b) * (c + b) * k * (k - 1)
    em1 = -2.0 * (c - b) * (C + a) * k
    e0 = (
        (c - b) ** 2 * k * (n - k + 1)
        + (a * (n - 2 * k) - C) ** 2
        + (c + b) ** 2 * (n - k) * (k + 1)
    )
    ep1 = -2.0 * (c + b) * (C - a) * (n - k)
    ep2 = (c + b) * (c - b) * (n - k) * (n - k - 1)
    return em2, em1, e0, ep1, ep2


def row_bound(m, n, tag, k):
    """Left Gershgorin endpoint of row k of the squared block."""
    em2, em1, e0, ep1, ep2 = squared_row_entries(m, n, tag, k)
    return e0 - (abs(em2) + abs(em1) + abs(ep1) + abs(ep2))


def min_row_bound(m, n):
    """Smallest left endpoint over both blocks of level n.

    A certified lower bound for every eigenvalue of the squared level
    operator, at any metric.
    """
    best = None
    for tag in ("A", "B"):
        for k in range(n + 1):
            v = row_bound(m, n, tag, k)
            if best is None or v < best:
                best = v
    return best


def _G(a, b, c, C, n, k):
    return (
        (a * (n - 2 * k) - C) ** 2
        + (b - c) ** 2 * k * (n - k + 1)
        + (b + c) ** 2 * (n - k) * (k + 1)
        - 2.0 * (b - c) * (C + a) * k
        - 2.0 * (b + c) * (C - a) * (n - k)
        - (b * b - c * c) * (k * (k - 1) + (n - k) * (n - k - 1))
    )


def _Gt(a, b, c, C, n, k):
    return (
        (a * (n - 2 * k) + C) ** 2
        + (b + c) ** 2 * k * (n - k + 1)
        + (b - c) ** 2 * (n - k) * (k + 1)
        - 2.0 * (b + c) * (C - a) * k
        - 2.0 * (b - c) * (C + a) * (n - k)
        - (b * b - c * c) * (k * (k - 1) + (n - k) * (n - k - 1))
    )


def closed_form_G(m, n, k, variant="G"):
    """Polynomial left endpoint G(n, k) or G~(n, k).

    The metric is permuted internally to a >= b >= c (the sign resolutions
    assume b >= c); the values satisfy G(n, k) = G~(n, n-k).
    """
    if not 0 <= k <= n:
        raise ValueError(f"index {k} outside 0..{n}")
    ms, _ = m.sorted()
    a, b, c = ms.triple()
    C = ms.C
    if variant == "G":
        return _G(a, b, c, C, n, k)
    if variant == "Gtilde":
        return _Gt(a, b, c, C, n, k)
    raise ValueError(f"unknown variant {variant!r}")


def triangle_increment(m, n, k, rtol=1e-10):
    """G(n+2, k+1) - G(n, k), evaluated and cross-checked.

    The difference collapses to 4*(c^2 n - b C + a c + b^2 + c^2), a value
    independent of k (metric sorted internally).  Disagreement between the
    collapsed form and the direct difference beyond ``rtol`` raises
    :class:`ConsistencyError`.
    """
    if not 0 <= k <= n:
        raise ValueError(f"index {k} outside 0..{n}")
    ms, _ = m.sorted()
    a, b, c = ms.triple()
    C = ms.C
    closed = 4.0 * (c * c * n - b * C + a * c + b * b + c * c)
    direct = _G(a, b, c, C, n + 2, k + 1) - _G(a, b, c, C, n, k)
    scale = max(1.0, abs(closed), abs(direct))
    if abs(closed - direct) > rtol * scale:
        raise ConsistencyError(
            f"triangle increment mismatch at (n={n}, k={k}): closed {closed!r} vs direct {direct!r}"
        )
    return closed


def base_case_families(m):
    """The three base-case inequalities as quadratics in the level n.

    Returns records (name, n_min, (A, B, D)) with
    A n^2 + B n + D = G_family(n) - threshold and threshold C^2; positivity
    of the quadratic for all n >= n_min is what the base cases claim.  Used
    to certify the tail beyond any finite horizon: it suffices that A > 0
    and that no real root reaches n_min.
    """
    ms, _ = m.sorted()
    a, b, c = ms.triple()
    C = ms.C
    lead = a * a - b * b + c * c
    fam_diag = ("G(n,n)-C^2", 1, (lead, 2.0 * (a * C + b * b - b * c - b * C + c * C - a * b + c * a), 0.0))
    fam_left = ("G(n,0)-C^2", 6, (lead, 2.0 * (-a * C + b * b + b * c - b * C - c * C + a * b + c * a), 0.0))
    fam_second = (
        "G(n,1)-C^2",
        4,
        (
            lead,
            -2.0 * (a + b + c) * C - 4.0 * a * a + 6.0 * b * b + 2.0 * (a * b + b * c + c * a),
            4.0 * (a + c) * C + 4.0 * a * a - 4.0 * b * b - 4.0 * a * b - 4.0 * b * c,
        ),
    )
    return [fam_diag, fam_left, fam_second]


@dataclass(frozen=True)
class BaseCaseCheck:
    name: str
    n: int
    k: int
    value: float
    reference: float
    margin: float
    kind: str  # "eq" or "gt"


@dataclass(frozen=True)
class BaseCaseReport:
    metric: tuple
    sorted_triple: tuple
    permutation: tuple
    horizon: int
    checks: tuple

    @property
    def min_strict_margin(self):
        margins = [c.margin for c in self.checks if c.kind == "gt"]
        return min(margins) if margins else float("inf")


def base_cases(m, horizon=200, rtol=_STRICT_RTOL):
    """Replay the base-case identities and inequalities up to ``horizon``.

    Requires positive scalar curvature (factor test).  Equalities are held
    to relative 1e-12; strict inequalities must clear a margin of
    rtol * scale.  Any violation raises :class:`CertificationError` naming
    the offending (n, k).
    """
    if horizon < 6:
        raise ValueError("horizon must be at least 6")
    if scal_sign_classification(m) != POSITIVE:
        raise UncertifiableError("base cases require positive scalar curvature")
    ms, perm = m.sorted()
    a, b, c = ms.triple()
    C = ms.C
    mu = ms.mu
    C2, mu2 = C * C, mu * mu
    checks = []

    def check_eq(name, n, k, value, reference):
        margin = abs(value - reference)
        if margin > rtol * max(abs(value), abs(reference)):
            raise CertificationError(f"{name} fails at (n={n}, k={k}): {value!r} != {reference!r}")
        checks.append(BaseCaseCheck(name, n, k, value, reference, margin, "eq"))

    def check_gt(name, n, k, value, reference):
        margin = value - reference
        if margin <= rtol * max(1.0, abs(reference)):
            raise CertificationError(
                f"{name} fails at (n={n}, k={k}): {value!r} not above {reference!r} (margin {margin:.3e})"
            )
        checks.append(BaseCaseCheck(name, n, k, value, reference, margin, "gt"))

    check_eq("G(0,0)=C^2", 0, 0, _G(a, b, c, C, 0, 0), C2)
    for n in range(1, horizon + 1):
        check_gt("G(n,n)>C^2", n, n, _G(a, b, c, C, n, n), C2)
    for n in range(6, horizon + 1):
        check_gt("G(n,0)>C^2", n, 0, _G(a, b, c, C, n, 0), C2)
    for n in range(4, horizon + 1):
        check_gt("G(n,1)>C^2", n, 1, _G(a, b, c, C, n, 1), C2)
    check_eq("G(1,0)=mu^2", 1, 0, _G(a, b, c, C, 1, 0), mu2)
    check_gt("G(5,0)>mu^2", 5, 0, _G(a, b, c, C, 5, 0), mu2)

    return BaseCaseReport(
        metric=m.triple(),
        sorted_triple=ms.triple(),
        permutation=perm,
        horizon=horizon,
        checks=tuple(checks),
    )


@dataclass(frozen=True)
class GershgorinTable:
    """Closed-form and direct left endpoints of one level.

    Built on the sorted metric; ``permutation`` records the relabeling.
    Row bounds follow the parity dictionary: block A sees G at even k and
    G~ at odd k, block B the other way around.
    """

    metric: tuple
    sorted_triple: tuple
    permutation: tuple
    level: int
    G: np.ndarray
    Gtilde: np.ndarray
    row_bounds_A: np.ndarray
    row_bounds_B: np.ndarray

    @property
    def min_bound(self):
        return float(min(self.row_bounds_A.min(), self.row_bounds_B.min()))


def gershgorin_table(m, n, rtol=1e-10):
    """Tabulate G, G~ and the direct row bounds of level n.

    The closed forms must reproduce the direct pentadiagonal bounds to
    relative ``rtol``; a mismatch raises :class:`ConsistencyError`.
    """
    ms, perm = m.sorted()
    a, b, c = ms.triple()
    C = ms.C
    ks = range(n + 1)
    G = np.array([_G(a, b, c, C, n, k) for k in ks])
    Gt = np.array([_Gt(a, b, c, C, n, k) for k in ks])
    bounds_a = np.array([row_bound(ms, n, "A", k) for k in ks])
    bounds_b = np.array([row_bound(ms, n, "B", k) for k in ks])
    for k in ks:
        expect_a = G[k] if k % 2 == 0 else Gt[k]
        expect_b = Gt[k] if k % 2 == 0 else G[k]
        for got, want, tag in ((bounds_a[k], expect_a, "A"), (bounds_b[k], expect_b, "B")):
            if abs(got - want) > rtol * max(1.0, abs(got), abs(want)):
                raise ConsistencyError(
                    f"closed form disagrees with direct row bound at (n={n}, k={k}, {tag}): {want!r} vs {got!r}"
                )
    return GershgorinTable(
        metric=m.triple(),
        sorted_triple=ms.triple(),
        permutation=perm,
        level=int(n),
        G=G,
        Gtilde=Gt,
        row_bounds_A=bounds_a,
        row_bounds_B=bounds_b,
    )
