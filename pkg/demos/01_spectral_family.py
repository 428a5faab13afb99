"""How the near-pole family sharpens as the damping shrinks.

For a fixed peak location we watch three things as delta goes to zero:
the peak height (grows like delta^-2), the variance (grows like delta^-1)
and the best AR(2) peak frequency, which slides onto lambda0.
"""
import math

from ar2peak.spectral_model import (
    DriverSpec,
    ProcessSpec,
    population_ar2,
    population_peak,
    spectral_density,
    theoretical_acf,
)

LAMBDA0 = 1.0

for driver in (DriverSpec.white(), DriverSpec.ar1(0.5)):
    print(f"\ndriver {driver.kind}  (coef {driver.coef})")
    print(f"{'delta':>7} {'d^2 f(l0)':>11} {'d*gamma0':>10} {'a1':>8} {'a2':>8} {'peak':>8}")
    for delta in (0.4, 0.2, 0.1, 0.05, 0.025, 0.0125):
        spec = ProcessSpec(delta, LAMBDA0, driver)
        acf = theoretical_acf(spec, 2)
        a1, a2 = population_ar2(spec, acf)
        print(
            f"{delta:7.4f} {delta**2 * spectral_density(spec, LAMBDA0):11.5f} "
            f"{delta * acf.gamma[0]:10.5f} {a1:8.4f} {a2:8.4f} {population_peak(spec, acf):8.5f}"
        )

print(f"\nlimits: a1 -> 2 cos(l0) = {2 * math.cos(LAMBDA0):.4f}, a2 -> -1, peak -> {LAMBDA0}")
