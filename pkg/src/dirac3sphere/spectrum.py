"""Global Dirac spectra, certified fundamental tones, and heat traces.

The spectrum of the full operator is the union of the level spectra: the
sphere collects every level, the two spin structures of the quotient collect
the even and the odd levels respectively.  A level-n eigenvalue of block
multiplicity m contributes m*(n+1) to the total multiplicity.

For positive scalar curvature the smallest absolute eigenvalue is mu on the
sphere and on the nontrivial quotient structure, and C on the trivial one;
``certify_fundamental_tone`` replays the complete chain of inequalities behind that
statement for a concrete metric and records every margin.  Outside that
regime only enumerated minima up to a level horizon are reported, clearly
flagged as uncertified.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .blocks import TAG_A, TAG_B, build_block, char_poly_small_n, closed_form_eigs
from .eigen import count_below, eigenvalues, min_abs_eigenvalue, symmetrize
from .errors import CertificationError, TruncationWarning, UncertifiableError
from .gershgorin import base_case_families, base_cases, min_row_bound, triangle_increment
from .metric import (
    POSITIVE,
    S3,
    SO3_NONTRIVIAL,
    SO3_TRIVIAL,
    SPECTRUM_MANIFOLDS,
    scal_sign_classification,
    volume,
)

#: relative tolerance at which numerically coincident eigenvalues are
#: reported as one line with a multiplicity
COINCIDENCE_RTOL = 1e-9


def admissible_levels(manifold, max_level):
    """Levels contributing to the spectrum of the chosen operator."""
    if manifold not in SPECTRUM_MANIFOLDS:
        raise ValueError(f"unknown manifold {manifold!r}; expected one of {SPECTRUM_MANIFOLDS}")
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    start = {S3: 0, SO3_TRIVIAL: 0, SO3_NONTRIVIAL: 1}[manifold]
    step = 1 if manifold == S3 else 2
    return range(start, max_level + 1, step)


@dataclass(frozen=True)
class SpectralLine:
    """One eigenvalue of one level, with multiplicities.

    ``tag`` is "A", "B", or "AB" when both blocks of the level carry the
    value; ``total_multiplicity`` is block multiplicity times (level + 1).
    """

    eigenvalue: float
    level: int
    tag: str
    block_multiplicity: int
    total_multiplicity: int


@dataclass(frozen=True)
class Spectrum:
    manifold: str
    metric: tuple
    max_level: int
    merge_tolerance: float
    lines: tuple

    def total_count(self):
        return sum(line.total_multiplicity for line in self.lines)

    def min_abs_line(self):
        if not self.lines:
            return None
        return min(self.lines, key=lambda line: abs(line.eigenvalue))

    def merged_lines(self, tol=None):
        """Across-level merged view: (eigenvalue, total multiplicity) pairs.

        Lines within relative ``tol`` of each other collapse to their
        multiplicity-weighted mean.  Raw lines are never altered.
        """
        if tol is None:
            tol = self.merge_tolerance
        merged = []
        for line in sorted(self.lines, key=lambda l: l.eigenvalue):
            if merged and _coincide(merged[-1][0], line.eigenvalue, tol):
                v, mult = merged[-1]
                w = line.total_multiplicity
                merged[-1] = ((v * mult + line.eigenvalue * w) / (mult + w), mult + w)
            else:
                merged.append((line.eigenvalue, line.total_multiplicity))
        return merged


def _coincide(x, y, rtol):
    return abs(x - y) <= rtol * max(1.0, abs(x), abs(y))


def _cluster(values, rtol):
    """Group a sorted 1-d array into (mean, count) clusters."""
    groups = []
    for v in values:
        if groups and _coincide(groups[-1][0] / groups[-1][1], v, rtol):
            groups[-1][0] += v
            groups[-1][1] += 1
        else:
            groups.append([v, 1])
    return [(s / c, c) for s, c in groups]


def level_lines(m, n, tol=None, rtol=COINCIDENCE_RTOL):
    """Spectral lines of one level, blocks merged where eigenvalues coincide."""
    entries = []
    for tag in (TAG_A, TAG_B):
        vals = eigenvalues(symmetrize(build_block(m, n, tag)), tol)
        entries.extend((v, cnt, tag) for v, cnt in _cluster(vals, rtol))
    entries.sort()
    lines = []
    for v, cnt, tag in entries:
        if lines and _coincide(lines[-1][0] / lines[-1][1], v, rtol):
            lines[-1][0] += v * cnt
            lines[-1][1] += cnt
            lines[-1][2].add(tag)
        else:
            lines.append([v * cnt, cnt, {tag}])
    out = []
    for total, cnt, tags in lines:
        tag = "AB" if len(tags) == 2 else tags.pop()
        out.append(SpectralLine(float(total / cnt), int(n), tag, cnt, cnt * (n + 1)))
    return out


def assemble(m, manifold, max_level, merge_tolerance=COINCIDENCE_RTOL, tol=None):
    """Assemble the spectrum of the chosen operator up to ``max_level``."""
    lines = []
    for n in admissible_levels(manifold, max_level):
        lines.extend(level_lines(m, n, tol=tol))
    lines.sort(key=lambda line: (line.eigenvalue, line.level, line.tag))
    return Spectrum(
        manifold=manifold,
        metric=m.triple(),
        max_level=int(max_level),
        merge_tolerance=merge_tolerance,
        lines=tuple(lines),
    )


def enumerated_min_abs(m, manifold, max_level=25, tol=None, rtol=COINCIDENCE_RTOL):
    """Numerically smallest |eigenvalue| over the admissible levels.

    Returns (value, multiplicity of the squared operator, levels examined).
    Levels whose Gershgorin row bounds already exceed the running minimum
    are skipped; the bounds are certified, so skipping is lossless.
    """
    levels = list(admissible_levels(manifold, max_level))
    if not levels:
        raise ValueError("no admissible levels below the requested cutoff")
    bounds = {n: min_row_bound(m, n) for n in levels}
    best = math.inf
    examined = []
    for n in levels:
        if best < math.inf and bounds[n] > (best * best) * (1.0 + 1e-9):
            continue
        examined.append(n)
        for tag in (TAG_A, TAG_B):
            v = min_abs_eigenvalue(build_block(m, n, tag), tol)
            if v < best:
                best = v
    # multiplicity of best^2 as an eigenvalue of the squared operator
    u = best + rtol * max(1.0, best)
    mult = 0
    for n in levels:
        if bounds[n] > u * u * (1.0 + 1e-9):
            continue
        level_count = 0
        for tag in (TAG_A, TAG_B):
            t = symmetrize(build_block(m, n, tag))
            level_count += count_below(t, u) - count_below(t, -u)
        mult += level_count * (n + 1)
    return best, mult, examined


@dataclass(frozen=True)
class CertificationStep:
    name: str
    detail: str
    margin: float
    passed: bool
    kind: str = "strict"  # "strict", "eq", or "note"


@dataclass(frozen=True)
class CertificationTrace:
    metric: tuple
    sorted_triple: tuple
    permutation: tuple
    C: float
    mu: float
    scal: float
    horizon: int
    steps: tuple
    passed: bool

    @property
    def min_margin(self):
        """Smallest margin among the strict inequalities."""
        margins = [s.margin for s in self.steps if s.kind == "strict"]
        return min(margins) if margins else float("inf")


def certify_fundamental_tone(m, horizon=200, margin_rtol=1e-12):
    """Numerically replay, for one metric, the proof that the fundamental
    tone is mu (sphere, odd quotient structure) and C (even structure).

    Steps, on the metric sorted to a >= b >= c:

    1. regime facts: positive factor test, C > max(a,b,c), C^2 < a^2+b^2+c^2;
    2. explicit levels 0..4: eigenvalues of levels 1 and 3 keep their
       distance, the level-2 polynomial is negative on [0, 2C], the level-4
       polynomial is positive there (concavity reduces both to endpoint
       checks);
    3. the base-case identities and inequalities up to ``horizon``, plus the
       quadratic-tail bounds that extend them to every level;
    4. the triangle increment: positive at every n <= horizon, matching its
       collapsed closed form, and increasing in n (so positive forever).

    Every inequality is recorded with its margin.  A failed step raises
    :class:`CertificationError`; a metric without positive scalar curvature
    raises :class:`UncertifiableError`.
    """
    if scal_sign_classification(m) != POSITIVE:
        raise UncertifiableError(
            "certification requires positive scalar curvature; spectra only admit enumerated minima here"
        )
    ms, perm = m.sorted()
    a, b, c = ms.triple()
    C, mu = ms.C, ms.mu
    s1 = a + b + c
    steps = []

    def strict(name, detail, margin, scale=1.0):
        ok = margin > margin_rtol * max(1.0, scale)
        steps.append(CertificationStep(name, detail, float(margin), ok, "strict"))
        if not ok:
            raise CertificationError(f"{name}: margin {margin:.3e} ({detail})")

    def equal(name, detail, value, reference, scale=1.0):
        err = abs(value - reference)
        ok = err <= margin_rtol * max(1.0, scale, abs(reference))
        steps.append(CertificationStep(name, detail, float(err), ok, "eq"))
        if not ok:
            raise CertificationError(f"{name}: |{value!r} - {reference!r}| = {err:.3e}")

    def note(name, detail):
        steps.append(CertificationStep(name, detail, None, True, "note"))

    # 1. regime
    ab, bc, ca = a * b, b * c, c * a
    strict("regime:scal>0", "minimal factor of the scal product form", min(ab + bc - ca, ab - bc + ca, -ab + bc + ca), scale=ab + bc + ca)
    strict("regime:C>max", "C - max(a,b,c)", C - a, scale=C)
    strict("regime:C^2<sigma1", "a^2+b^2+c^2 - C^2 (equals scal/8)", a * a + b * b + c * c - C * C, scale=C * C)
    strict("regime:mu>0", "mu", mu, scale=C)
    note("level0", f"sole eigenvalue -C = {-C!r} with multiplicity 2")

    # 2. explicit small levels
    e1 = closed_form_eigs(ms, 1)
    equal("level1:mu", "first closed-form eigenvalue equals mu", float(e1[0]), mu, scale=C)
    for i, v in enumerate(e1[1:], start=1):
        strict(f"level1:gap:{i}", f"|eigenvalue {i}| - mu", abs(float(v)) - mu, scale=C)

    chi2 = char_poly_small_n(ms, 2)
    for x, label in ((0.0, "0"), (2.0 * C, "2C")):
        strict(f"level2:chi2({label})<0", "level-2 polynomial negative on [0, 2C] (convex, endpoints suffice)",
               -float(np.polyval(chi2, x)), scale=16.0 * a * b * c)

    e3 = closed_form_eigs(ms, 3) + C  # unshifted values, to compare with [2C - s1, s1]
    for i, v in enumerate(e3, start=1):
        strict(f"level3:outside:{i}", "distance of unshifted eigenvalue to [2C-s1, s1]",
               max(2.0 * C - s1 - float(v), float(v) - s1), scale=s1)

    chi4 = char_poly_small_n(ms, 4)
    chi4dd = np.polyder(chi4, 2)
    for x, label in ((0.0, "0"), (2.0 * C, "2C")):
        strict(f"level4:chi4''({label})<0", "second derivative negative on [0, 2C] (convex, endpoints suffice)",
               -float(np.polyval(chi4dd, x)), scale=160.0 * a * b * c)
    for x, label in ((0.0, "0"), (2.0 * C, "2C")):
        strict(f"level4:chi4({label})>0", "level-4 polynomial positive on [0, 2C] (concave there, endpoints suffice)",
               float(np.polyval(chi4, x)), scale=768.0 * a * b * c * (a * a + b * b + c * c))

    # 3. base cases with horizon and quadratic tails
    report = base_cases(ms, horizon=horizon, rtol=margin_rtol)
    for chk in report.checks:
        steps.append(CertificationStep(
            f"base:{chk.name}",
            f"n={chk.n}, k={chk.k}: value {chk.value!r} vs {chk.reference!r}",
            float(chk.margin),
            True,
            "strict" if chk.kind == "gt" else "eq",
        ))
    for name, n_min, (A, B, D) in base_case_families(ms):
        strict(f"tail:{name}:leading", "quadratic-in-n leading coefficient a^2-b^2+c^2", A, scale=a * a)
        disc = B * B - 4.0 * A * D
        largest = -math.inf if disc < 0.0 else (-B + math.sqrt(disc)) / (2.0 * A)
        strict(f"tail:{name}:root", f"n_min - largest real root (largest root {largest!r})",
               min(n_min - largest, float(n_min)), scale=float(n_min))

    # 4. triangle increments
    inc0 = triangle_increment(ms, 0, 0)
    strict("increment:n=0", "4*(c^2 n - bC + ac + b^2 + c^2) at n = 0", inc0, scale=4.0 * b * C)
    note("increment:tail", f"increment grows linearly in n with slope 4c^2 = {4.0 * c * c!r} > 0")
    for n in range(1, horizon + 1):
        inc = triangle_increment(ms, n, 0)
        strict(f"increment:n={n}", "collapsed increment, cross-checked against the G difference at k=0",
               inc, scale=4.0 * (c * c * n + b * C + a * c + b * b + c * c))

    return CertificationTrace(
        metric=m.triple(),
        sorted_triple=ms.triple(),
        permutation=perm,
        C=C,
        mu=mu,
        scal=ms.scal,
        horizon=horizon,
        steps=tuple(steps),
        passed=True,
    )


@dataclass(frozen=True)
class SmallestEigenvalueReport:
    """Smallest |eigenvalue| of one operator, with provenance.

    ``certified`` is True only when the full verification chain ran and
    passed, which requires positive scalar curvature.  ``max_level`` is the
    enumeration horizon when the value is numerical, None for closed forms.
    """

    manifold: str
    metric: tuple
    value: float
    multiplicity_d_squared: int
    certified: bool
    certification_trace: object
    method: str
    max_level: object


def smallest(m, manifold, certify=None, max_level=25, horizon=200, round_rtol=1e-12):
    """Smallest absolute eigenvalue of the chosen operator.

    With positive scalar curvature the value is mu (sphere and odd
    structure) or C (even structure), with squared-operator multiplicity 4
    exactly on the round line of the sphere and 2 otherwise; ``certify``
    (default: yes in this regime) attaches the full verification trace.

    Otherwise the value is the enumerated minimum over levels <= max_level,
    never certified; requesting certification there raises
    :class:`UncertifiableError`.
    """
    if manifold not in SPECTRUM_MANIFOLDS:
        raise ValueError(f"unknown manifold {manifold!r}")
    classification = scal_sign_classification(m)
    if classification == POSITIVE:
        value = m.C if manifold == SO3_TRIVIAL else m.mu
        mult = 4 if manifold == S3 and m.is_round(round_rtol) else 2
        trace = None
        if certify is None or certify:
            trace = certify_fundamental_tone(m, horizon=horizon)
        return SmallestEigenvalueReport(
            manifold=manifold,
            metric=m.triple(),
            value=value,
            multiplicity_d_squared=mult,
            certified=trace is not None,
            certification_trace=trace,
            method="closed-form",
            max_level=None,
        )
    if certify:
        raise UncertifiableError(
            "scal <= 0: eigenvalues may cross zero along metric families, no certified minimum exists"
        )
    value, mult, _ = enumerated_min_abs(m, manifold, max_level=max_level)
    return SmallestEigenvalueReport(
        manifold=manifold,
        metric=m.triple(),
        value=value,
        multiplicity_d_squared=mult,
        certified=False,
        certification_trace=None,
        method="enumeration",
        max_level=int(max_level),
    )


def weyl_count_estimate(m, manifold, lam):
    """Leading Weyl-law estimate of #{|eigenvalue| <= lam}: vol/(3 pi^2) lam^3."""
    return volume(m, manifold) / (3.0 * math.pi ** 2) * lam ** 3


@dataclass(frozen=True)
class HeatTraceResult:
    value: float
    tail_estimate: float
    t: float
    max_level: int
    lambda_max: float
    computed_count: int


def heat_trace(m, manifold, t, max_level, spectrum=None):
    """Truncated trace of exp(-t D^2) plus a truncation-tail estimate.

    The tail estimate is exp(-t lambda_max^2) times the Weyl-estimated
    number of eigenvalues the level cutoff may have missed below the largest
    computed |eigenvalue|; a heuristic order-of-magnitude figure, not a
    certified bound.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    spec = spectrum if spectrum is not None else assemble(m, manifold, max_level)
    value = 0.0
    lam_max = 0.0
    computed = 0
    for line in spec.lines:
        value += line.total_multiplicity * math.exp(-t * line.eigenvalue ** 2)
        lam_max = max(lam_max, abs(line.eigenvalue))
        computed += line.total_multiplicity
    missed = max(weyl_count_estimate(m, manifold, lam_max) - computed, 0.0)
    tail = math.exp(-t * lam_max ** 2) * missed
    return HeatTraceResult(
        value=value,
        tail_estimate=tail,
        t=float(t),
        max_level=int(max_level),
        lambda_max=lam_max,
        computed_count=computed,
    )


def counting_function(m, manifold, lam, max_level, spectrum=None):
    """Number of eigenvalues with |eigenvalue| <= lam, multiplicity counted.

    Warns with :class:`TruncationWarning` when the top computed level still
    lies entirely at or below lam, in which case higher levels would
    certainly contribute as well.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    spec = spectrum if spectrum is not None else assemble(m, manifold, max_level)
    include = lam + 1e-9 * (1.0 + lam)
    count = sum(line.total_multiplicity for line in spec.lines if abs(line.eigenvalue) <= include)
    levels = list(admissible_levels(manifold, max_level))
    top = levels[-1] if levels else None
    top_max = max((abs(l.eigenvalue) for l in spec.lines if l.level == top), default=0.0)
    if top is None or top_max <= lam:
        warnings.warn(
            f"level cutoff {max_level} is insufficient for lam = {lam}: "
            f"largest |eigenvalue| at level {top} is {top_max}",
            TruncationWarning,
            stacklevel=2,
        )
    return count
