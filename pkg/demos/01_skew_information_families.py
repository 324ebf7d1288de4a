"""Tour of the skew-information families on a qubit and a random state.

Shows the closed-form qubit values, how the one- and two-parameter families
nest into each other, and the function-triple generalization.
"""

import numpy as np

from skewlab import (
    Const,
    DensityMatrix,
    FunctionTriple,
    HermitianMatrix,
    Power,
    fgh_family,
    gwyd_family,
    gwyd_tilde_family,
    luo_u,
    sample_density,
    sample_observable,
    variance,
    wy_skew,
    wyd_family,
)

sx = HermitianMatrix([[0, 1], [1, 0]])

# A diagonal qubit state: everything has a closed form.
p = 0.75
rho = DensityMatrix(np.diag([p, 1 - p]))

print(f"qubit state diag({p}, {1 - p}), observable sigma_x")
print(f"  variance          V = {variance(rho, sx):.12f}")
print(f"  skew information  I = {wy_skew(rho, sx):.12f}   (= 1 - 2 sqrt(p q))")
print(f"  quantum share     U = {luo_u(rho, sx):.12f}   (= |p - q|)")

# The one-parameter family interpolates; alpha = 1/2 recovers the value above.
print("\none-parameter family across alpha:")
for alpha in (0.1, 0.25, 0.5, 0.75, 0.9):
    b = wyd_family(rho, sx, alpha)
    print(f"  alpha={alpha:4.2f}  I={b.I:.8f}  J={b.J:.8f}  U={b.U:.8f}")

# Two-parameter families on a random 4-level state.
rng = np.random.default_rng(1)
rho4 = sample_density(4, rng)
h4 = sample_observable(4, rng)

alpha, beta = 0.3, 0.4
two = gwyd_family(rho4, h4, alpha, beta)
tilde = gwyd_tilde_family(rho4, h4, alpha, beta)
print(f"\nrandom 4-level state, exponents ({alpha}, {beta}):")
print(f"  symmetric family   I={two.I:.8f}  U={two.U:.8f}")
print(f"  one-sided family   I={tilde.I:.8f}  U={tilde.U:.8f}")

# Both are special cases of the function-triple family.
as_triple = fgh_family(
    rho4, h4, FunctionTriple(Power(p=alpha), Power(p=beta), Power(p=1 - alpha - beta))
)
as_flat = fgh_family(
    rho4, h4, FunctionTriple(Power(p=alpha), Power(p=beta), Const(c=1.0))
)
print("\ntriple reductions (should match the families above):")
print(f"  (x^a, x^b, x^(1-a-b)) -> I={as_triple.I:.8f}")
print(f"  (x^a, x^b, 1)         -> I={as_flat.I:.8f}")
