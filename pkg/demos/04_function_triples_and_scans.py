"""The scalar machinery behind the general bound: pair classification, the
corner coefficient, the two-point ratio surface, and the exponential lemma.
"""

import numpy as np

from skewlab import (
    Const,
    Exp,
    FunctionTriple,
    Power,
    ScaledSum,
    beta_coefficient,
    check_assumption,
    classify_pair,
    l_scan_min,
    lemma41_check,
    ratio_bounds,
)

# Classify pairs by joint monotonicity plus log-derivative ratio bounds.
print("pair classification:")
for f, g in [
    (Power(p=0.5), Power(p=1 / 3)),
    (Power(p=0.5), Power(p=-1 / 3)),
    (Power(p=1.0), ScaledSum(terms=((1.0, 2.0), (1.0, 1.0)))),
]:
    kind, m, big_m = classify_pair(f, g)
    print(f"  {f} / {g}: {kind.value}, ratio in [{m:.4f}, {big_m:.4f}]")

# Triples and their bound coefficients. The grid minimum of the two-point
# ratio surface must sit above 16x the coefficient whenever the triple
# satisfies one of the two divided-difference conditions.
triples = {
    "quarter powers": FunctionTriple(Power(p=0.25), Power(p=0.25), Power(p=0.5)),
    "negative h": FunctionTriple(Power(p=1.0), Power(p=1.0), Power(p=-0.5)),
    "non-constant ratio": FunctionTriple(
        Power(p=1.0), ScaledSum(terms=((1.0, 2.0), (1.0, 1.0))), Power(p=4.0)
    ),
    "pair (constant h)": FunctionTriple(Power(p=0.5), Power(p=1 / 3), Const(c=1.0)),
    "exponentials": FunctionTriple(Exp(a=1.0), Exp(a=0.5), Exp(a=2.0)),
}
print("\ntriple scans (grid 200x200):")
for name, triple in triples.items():
    beta = beta_coefficient(ratio_bounds(triple))
    res = l_scan_min(triple, k=200)
    print(
        f"  {name:<20} condition {check_assumption(triple).value:<7} "
        f"16*beta={16 * beta:.6f}  min L={res.min_value:.6f} "
        f"at ({res.arg_x:.4f}, {res.arg_y:.4f})"
    )

# The scalar exponential inequality that drives the surface bound.
print("\nexponential lemma margins:")
for a, b, c in [(0.5, 0.5, 1.0), (1.0, 1.0, -0.5), (0.3, 0.8, 2.0)]:
    rep = lemma41_check(a, b, c, rmax=10.0, steps=2000)
    print(
        f"  (a,b,c)=({a},{b},{c}): rhs={rep.rhs:.6f} "
        f"min margin={rep.min_margin:+.3e} at r={rep.argmin_r:+.3f}, "
        f"violations={rep.violations}"
    )
print("\n(the first parameter set lies on the equality family, so its margin")
print("is zero up to rounding for every r)")
