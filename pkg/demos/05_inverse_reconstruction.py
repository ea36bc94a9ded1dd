"""Recovering the metric from spectral data, in every curvature regime.

Volume and total scalar curvature are read off the first two heat
coefficients; one more number pins the metric up to permutation.  With
scal > 0 that number is the fundamental tone (mu, or C on the even quotient
structure); with scal <= 0 it is the heat combination a2~ = 8|Ric|^2 +
7|Riem|^2.  Each route runs the closed-form elimination down to a cubic in
the symmetric polynomials and reads the triple off its roots.
"""

import numpy as np

import dirac3sphere as d3s
from dirac3sphere import Metric


def roundtrip_mu(m):
    inv = d3s.invariants(m)
    return d3s.reconstruct_positive_mu(inv.vol_s3, inv.scal, inv.mu, d3s.S3)


def main():
    print("Positive curvature, tone route (sphere):")
    for triple in ((1, 1, 1), (2, 1, 1), (1.3, 0.8, 0.9)):
        m = Metric(*triple)
        r = roundtrip_mu(m)
        print(f"  {triple} -> {tuple(round(x, 12) for x in r.triple)}  residual {r.max_residual:.2e}")

    print("\nPositive curvature, shift route (even quotient structure):")
    m = Metric(1, 0.9, 0.8)
    inv = d3s.invariants(m)
    r = d3s.reconstruct_positive_C(inv.vol_so3, inv.scal, inv.C, d3s.SO3_TRIVIAL)
    print(f"  (1, 0.9, 0.8) -> {tuple(round(x, 12) for x in r.triple)}  sigma polys {r.sym_polys}")

    print("\nNonpositive curvature, heat route:")
    for triple in ((1, 1, 0.5), (1, 1, 0.4), (1.2, 1.1, 0.3)):
        m = Metric(*triple)
        inv = d3s.invariants(m)
        r = d3s.reconstruct_nonpositive(inv.vol_s3, inv.scal, inv.a2_tilde, d3s.S3)
        print(f"  {triple} -> {tuple(round(x, 12) for x in r.triple)}  branch {r.branch}")

    print("\nRegime gates:")
    pos = d3s.invariants(Metric(2, 1, 1))
    for call, kwargs in (
        (d3s.reconstruct_nonpositive, dict(vol=pos.vol_s3, scal=pos.scal, a2_tilde=pos.a2_tilde)),
        (d3s.reconstruct_positive_mu, dict(vol=pos.vol_so3, scal=pos.scal, mu=pos.mu, manifold=d3s.SO3_TRIVIAL)),
    ):
        try:
            call(**kwargs)
        except d3s.WrongRegimeError as exc:
            print(f"  {call.__name__}: {exc}")

    print("\nInfeasible data is rejected rather than force-fitted:")
    try:
        d3s.reconstruct_positive_mu(2 * np.pi ** 2, 6.0, 100.0, d3s.S3)
    except d3s.InconsistentInputError as exc:
        print(f"  mu = 100 with round-sphere volume: {exc}")


if __name__ == "__main__":
    main()
