"""Tour of the threshold quantities across the three dynamical regimes.

The model has two reproduction numbers.  R0 discounts transmission by the
time spent infectious before treatment/recovery; RC drops that discount
and bounds R0 from above.  Three regimes follow:

    RC < 1         every epidemic dies out (globally)
    R0 < 1 < RC    the infection-free state is locally stable, but an
                   endemic state may coexist (backward bifurcation)
    R0 > 1         the endemic state prevails

The script evaluates the closed-form constant-rate ratios, the general
quadrature machinery, and the dominant growth rate of the linearization
for the three transmission levels used throughout this package.
"""

from epiage import (
    ConstantRates,
    analysis_kernel,
    classify,
    euler_lotka,
    r0_rc_exact,
)

BASE = dict(mu=0.0125, phi=60.0, gamma=13.0, rho=76.65)

print(f"{'beta':>8} {'R0 exact':>12} {'R0 general':>12} {'RC':>10} "
      f"{'growth/yr':>12} {'region':>20}")
for beta in (0.011, 60.0, 120.0):
    rates = ConstantRates(beta=beta, **BASE)
    kernel = analysis_kernel(rates)
    report = classify(rates, kernel)
    r0_exact, rc_exact = r0_rc_exact(rates)
    print(
        f"{beta:8.3f} {r0_exact:12.6g} {report.r0:12.6g} {rc_exact:10.4g} "
        f"{report.growth_rate:12.6g} {report.region:>20}"
    )

# the growth equation is strictly decreasing and convex in the rate, so
# its unique real root pins the initial growth or decay of an outbreak
rates = ConstantRates(beta=60.0, **BASE)
kernel = analysis_kernel(rates)
print("\ngrowth equation G(lambda) along a few rates (beta = 60):")
for lam in (-20.0, -13.0125, 0.0, 20.0):
    print(f"  G({lam:+8.4f}) = {euler_lotka(lam, rates, kernel):.6f}")
print("closed form for constant rates: G(lambda) = beta/(lambda + mu + phi + gamma)")
print(f"  check at lambda = 10: {euler_lotka(10.0, rates, kernel):.8f} "
      f"vs {60.0 / 83.0125:.8f}")
