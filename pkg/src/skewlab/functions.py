"""Scalar function catalog with closed-form derivatives, plus the pair
classification, bound coefficients, and grid scans built on top of it.

Everything here operates on nonnegative functions restricted to [eps, 1];
the floor eps keeps negative powers finite and must sit below the smallest
eigenvalue of any state the functions are later applied to.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import DomainError

__all__ = [
    "DEFAULT_EPS",
    "RATIO_GRID",
    "PAIR_GRID",
    "ScalarFunction",
    "Power",
    "Exp",
    "Const",
    "ScaledSum",
    "FunctionTriple",
    "PairClass",
    "Assumption",
    "RatioBounds",
    "classify_pair",
    "check_assumption",
    "ratio_bounds",
    "beta_coefficient",
    "cor41_beta",
    "corner_function",
    "l_value",
    "l_scan_min",
    "LScanResult",
    "lemma41_lhs",
    "lemma41_check",
    "Lemma41Report",
    "function_from_spec",
    "function_to_spec",
    "triple_from_spec",
    "triple_to_spec",
]

DEFAULT_EPS = 1e-6
RATIO_GRID = 10_000   # grid for inf/sup of log-derivative ratios
PAIR_GRID = 512       # grid for the pairwise sign / divided-difference checks


class ScalarFunction:
    """Base: nonnegative function on [eps, 1] with closed-form derivatives.

    Subclasses provide value/deriv/log_value; log_deriv defaults to
    deriv/value. All evaluators accept scalars or numpy arrays.
    """

    eps: float

    def value(self, x):
        raise NotImplementedError

    def deriv(self, x):
        raise NotImplementedError

    def log_value(self, x):
        """log(value(x)), computed in closed form where cancellation matters."""
        return np.log(self.value(x))

    def log_deriv(self, x):
        """Derivative of log(value)."""
        return self.deriv(x) / self.value(x)

    def check_domain(self, x) -> None:
        x = np.asarray(x, dtype=float)
        if x.size and float(x.min()) < self.eps - 1e-15:
            raise DomainError(
                f"argument {float(x.min()):.3e} below domain floor {self.eps:.1e}"
            )
        if x.size and float(x.max()) > 1.0 + 1e-12:
            raise DomainError(f"argument {float(x.max()):.6f} above domain [eps, 1]")

    def grid(self, k: int) -> np.ndarray:
        return np.linspace(self.eps, 1.0, k)


@dataclass(frozen=True)
class Power(ScalarFunction):
    """x**p. Negative exponents are admissible thanks to the domain floor."""

    p: float
    eps: float = DEFAULT_EPS

    def value(self, x):
        return np.asarray(x, dtype=float) ** self.p

    def deriv(self, x):
        return self.p * np.asarray(x, dtype=float) ** (self.p - 1.0)

    def log_value(self, x):
        return self.p * np.log(x)

    def log_deriv(self, x):
        return self.p / np.asarray(x, dtype=float)


@dataclass(frozen=True)
class Exp(ScalarFunction):
    """exp(a * x)."""

    a: float
    eps: float = DEFAULT_EPS

    def value(self, x):
        return np.exp(self.a * np.asarray(x, dtype=float))

    def deriv(self, x):
        return self.a * self.value(x)

    def log_value(self, x):
        return self.a * np.asarray(x, dtype=float)

    def log_deriv(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.a)


@dataclass(frozen=True)
class Const(ScalarFunction):
    """Constant c >= 0."""

    c: float
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.c < 0.0:
            raise ValueError(f"constant must be nonnegative, got {self.c}")

    def value(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.c)

    def deriv(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def log_value(self, x):
        if self.c == 0.0:
            raise DomainError("log of the zero constant is undefined")
        return np.full_like(np.asarray(x, dtype=float), math.log(self.c))

    def log_deriv(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class ScaledSum(ScalarFunction):
    """Nonnegative combination sum_k c_k * x**p_k with all c_k >= 0."""

    terms: tuple[tuple[float, float], ...]  # (coefficient, exponent)
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        terms = tuple((float(c), float(p)) for c, p in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("scaled sum needs at least one term")
        if any(c < 0.0 for c, _ in terms):
            raise ValueError("scaled-sum coefficients must be nonnegative")
        if all(c == 0.0 for c, _ in terms):
            raise ValueError("scaled sum must have a positive coefficient")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c, p in self.terms:
            out = out + c * x**p
        return out

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c, p in self.terms:
            out = out + c * p * x ** (p - 1.0)
        return out


_FUNCTION_FIELDS = {
    "power": ("p",),
    "exp": ("a",),
    "const": ("c",),
    "scaled_sum": ("terms",),
}


def function_from_spec(doc: dict, eps: float | None = None) -> ScalarFunction:
    """Build a catalog function from its JSON description."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError(f"function spec must be an object with a 'kind': {doc!r}")
    doc = dict(doc)
    kind = doc.pop("kind")
    if kind not in _FUNCTION_FIELDS:
        raise ValueError(f"unknown function kind {kind!r}")
    if eps is None:
        eps = float(doc.pop("eps", DEFAULT_EPS))
    else:
        doc.pop("eps", None)
    missing = [k for k in _FUNCTION_FIELDS[kind] if k not in doc]
    if missing:
        raise ValueError(f"function spec of kind {kind!r} misses fields {missing}")
    extra = set(doc) - set(_FUNCTION_FIELDS[kind])
    if extra:
        raise ValueError(f"unknown keys in function spec: {sorted(extra)}")
    if kind == "power":
        return Power(p=float(doc["p"]), eps=eps)
    if kind == "exp":
        return Exp(a=float(doc["a"]), eps=eps)
    if kind == "const":
        return Const(c=float(doc["c"]), eps=eps)
    terms = tuple((float(c), float(p)) for c, p in doc["terms"])
    return ScaledSum(terms=terms, eps=eps)


def function_to_spec(fn: ScalarFunction) -> dict:
    if isinstance(fn, Power):
        return {"kind": "power", "p": fn.p}
    if isinstance(fn, Exp):
        return {"kind": "exp", "a": fn.a}
    if isinstance(fn, Const):
        return {"kind": "const", "c": fn.c}
    if isinstance(fn, ScaledSum):
        return {"kind": "scaled_sum", "terms": [[c, p] for c, p in fn.terms]}
    raise TypeError(f"cannot serialize {type(fn).__name__}")


@dataclass(frozen=True)
class FunctionTriple:
    """Triple (f, g, h) sharing one domain floor; f must be strictly
    increasing and positive so the log-derivative ratios are well defined."""

    f: ScalarFunction
    g: ScalarFunction
    h: ScalarFunction
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        for name, fn in (("f", self.f), ("g", self.g), ("h", self.h)):
            if fn.eps != self.eps:
                raise ValueError(
                    f"{name} has domain floor {fn.eps}, triple expects {self.eps}"
                )
        grid = np.linspace(self.eps, 1.0, PAIR_GRID)
        if np.any(np.asarray(self.f.value(grid)) <= 0.0):
            raise ValueError("f must be strictly positive on [eps, 1]")
        if np.any(np.asarray(self.f.deriv(grid)) <= 0.0):
            raise ValueError("f must be strictly increasing on [eps, 1]")


def triple_from_spec(doc: dict) -> FunctionTriple:
    if not isinstance(doc, dict):
        raise ValueError("triple spec must be a JSON object")
    doc = dict(doc)
    eps = float(doc.pop("eps", DEFAULT_EPS))
    try:
        f = function_from_spec(doc.pop("f"), eps=eps)
        g = function_from_spec(doc.pop("g"), eps=eps)
        h = function_from_spec(doc.pop("h"), eps=eps)
    except KeyError as exc:
        raise ValueError(f"triple spec misses field {exc}") from exc
    if doc:
        raise ValueError(f"unknown keys in triple spec: {sorted(doc)}")
    return FunctionTriple(f=f, g=g, h=h, eps=eps)


def triple_to_spec(triple: FunctionTriple) -> dict:
    return {
        "f": function_to_spec(triple.f),
        "g": function_to_spec(triple.g),
        "h": function_to_spec(triple.h),
        "eps": triple.eps,
    }


class PairClass(enum.Enum):
    MONOTONE = "monotone"
    ANTI_MONOTONE = "anti-monotone"
    NEITHER = "neither"


class Assumption(enum.Enum):
    I = "I"
    II = "II"
    NEITHER = "neither"


@dataclass(frozen=True)
class RatioBounds:
    """inf/sup of the log-derivative ratios of (g over f) and (h over f)."""

    m_g: float
    M_g: float
    m_h: float
    M_h: float
    grid_size: int = RATIO_GRID

    def __post_init__(self):
        vals = (self.m_g, self.M_g, self.m_h, self.M_h)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"ratio bounds must be finite, got {vals}")
        if self.m_g > self.M_g or self.m_h > self.M_h:
            raise ValueError(f"bounds out of order: {vals}")


def _ratio_extrema(f: ScalarFunction, g: ScalarFunction, k: int) -> tuple[float, float]:
    """inf and sup of log_deriv(g)/log_deriv(f) on [eps, 1].

    Constant-ratio pairs (power/power, exp/exp, constant numerator) are
    resolved in closed form; everything else is gridded.
    """
    if isinstance(f, Const):
        raise ValueError("ratio undefined: log-derivative of f vanishes")
    if isinstance(g, Const):
        return (0.0, 0.0)
    if isinstance(f, Power) and isinstance(g, Power):
        r = g.p / f.p
        return (r, r)
    if isinstance(f, Exp) and isinstance(g, Exp):
        r = g.a / f.a
        return (r, r)
    grid = np.linspace(max(f.eps, g.eps), 1.0, k)
    ld_f = np.asarray(f.log_deriv(grid), dtype=float)
    if float(np.min(np.abs(ld_f))) < 1e-30:
        raise ValueError("ratio undefined: log-derivative of f vanishes on the grid")
    ratio = np.asarray(g.log_deriv(grid), dtype=float) / ld_f
    if not np.all(np.isfinite(ratio)):
        raise ValueError("ratio undefined: non-finite log-derivative ratio")
    return (float(ratio.min()), float(ratio.max()))


def _pair_condition(fv: np.ndarray, gv: np.ndarray, sign: int, tol: float = 1e-12) -> bool:
    """True when sign * (f(x)-f(y)) * (g(x)-g(y)) >= -tol for every grid pair."""
    n = fv.size
    if n <= 2048:
        prod = sign * (fv[:, None] - fv[None, :]) * (gv[:, None] - gv[None, :])
        return float(prod.min()) >= -tol
    # Exact pass on large grids: sort by f and demand block-wise ordering of g;
    # ties in f contribute zero products and are grouped into blocks.
    order = np.argsort(fv, kind="mergesort")
    fs = fv[order]
    gs = sign * gv[order]
    boundary = np.empty(n, dtype=bool)
    boundary[0] = True
    boundary[1:] = fs[1:] > fs[:-1]
    block = np.cumsum(boundary) - 1
    nb = int(block[-1]) + 1
    bmax = np.full(nb, -np.inf)
    np.maximum.at(bmax, block, gs)
    bmin = np.full(nb, np.inf)
    np.minimum.at(bmin, block, gs)
    if np.all(bmin[1:] >= np.maximum.accumulate(bmax)[:-1]):
        return True
    # Borderline: apply the product tolerance pairwise, in chunks.
    step = max(1, (1 << 22) // n)
    for lo in range(0, n, step):
        prod = (
            sign
            * (fv[lo : lo + step, None] - fv[None, :])
            * (gv[lo : lo + step, None] - gv[None, :])
        )
        if float(prod.min()) < -tol:
            return False
    return True


def classify_pair(
    f: ScalarFunction,
    g: ScalarFunction,
    k: int = RATIO_GRID,
    tol: float = 1e-12,
) -> tuple[PairClass, float, float]:
    """Classify (f, g) as a monotone pair, an anti-monotone pair, or neither.

    A monotone pair moves jointly ((f(x)-f(y))(g(x)-g(y)) >= 0 on all grid
    pairs) and has a bounded nonnegative log-derivative ratio; an
    anti-monotone pair flips both signs. Returns the class together with the
    ratio's (inf, sup) over the grid.
    """
    if k < 2:
        raise ValueError("classification grid needs at least 2 points")
    m, big_m = _ratio_extrema(f, g, k)
    grid = np.linspace(max(f.eps, g.eps), 1.0, k)
    fv = np.asarray(f.value(grid), dtype=float)
    gv = np.asarray(g.value(grid), dtype=float)
    if _pair_condition(fv, gv, +1, tol) and m >= -tol:
        return (PairClass.MONOTONE, m, big_m)
    if _pair_condition(fv, gv, -1, tol) and big_m <= tol:
        return (PairClass.ANTI_MONOTONE, m, big_m)
    return (PairClass.NEITHER, m, big_m)


def ratio_bounds(triple: FunctionTriple, k: int = RATIO_GRID) -> RatioBounds:
    m_g, M_g = _ratio_extrema(triple.f, triple.g, k)
    m_h, M_h = _ratio_extrema(triple.f, triple.h, k)
    return RatioBounds(m_g=m_g, M_g=M_g, m_h=m_h, M_h=M_h, grid_size=k)


def check_assumption(
    triple: FunctionTriple,
    k_pairs: int = PAIR_GRID,
    tol: float = 1e-12,
) -> Assumption:
    """Decide which divided-difference condition the triple satisfies.

    Condition I: (f,g) and (f,h) are monotone pairs with
    1 + dG/dF <= dH/dF on all grid pairs x < y. Condition II: (f,g) is a
    monotone pair, (f,h) an anti-monotone pair, with 1 + dG/dF + dH/dF >= 0.
    A constant h counts as a (degenerate) anti-monotone partner, which is what
    routes two-function triples through condition II.
    """
    f, g, h = triple.f, triple.g, triple.h
    grid = np.linspace(triple.eps, 1.0, k_pairs)
    fv = np.asarray(f.value(grid), dtype=float)
    gv = np.asarray(g.value(grid), dtype=float)
    hv = np.asarray(h.value(grid), dtype=float)

    m_g, M_g = _ratio_extrema(f, g, RATIO_GRID)
    m_h, M_h = _ratio_extrema(f, h, RATIO_GRID)
    fg_mono = _pair_condition(fv, gv, +1, tol) and m_g >= -tol
    if not fg_mono:
        return Assumption.NEITHER
    fh_mono = _pair_condition(fv, hv, +1, tol) and m_h >= -tol
    fh_anti = _pair_condition(fv, hv, -1, tol) and M_h <= tol

    lf = np.asarray(f.log_value(grid), dtype=float)
    lg = np.asarray(g.log_value(grid), dtype=float)
    lh = np.asarray(h.log_value(grid), dtype=float)
    i, j = np.triu_indices(k_pairs, k=1)
    d_f = lf[j] - lf[i]
    if np.any(d_f <= 0.0):
        raise ValueError("f is not strictly increasing on the grid")
    r_g = (lg[j] - lg[i]) / d_f
    r_h = (lh[j] - lh[i]) / d_f

    if fh_mono and bool(np.all(1.0 + r_g <= r_h + tol)):
        return Assumption.I
    if fh_anti and bool(np.all(1.0 + r_g + r_h >= -tol)):
        return Assumption.II
    return Assumption.NEITHER


def beta_coefficient(bounds: RatioBounds) -> float:
    """Lower-bound coefficient from the four corner values k/(1+k+l)^2.

    k ranges over the (g over f) ratio bounds and l over the (h over f)
    bounds; the minimum of the four corners is taken as stated and clamped
    at zero. A corner with 1 + k + l ~ 0 is a degenerate denominator.
    """
    corners = []
    for k in (bounds.m_g, bounds.M_g):
        for ell in (bounds.m_h, bounds.M_h):
            den = 1.0 + k + ell
            if abs(den) <= 1e-12:
                raise ValueError(
                    f"degenerate denominator: 1 + {k!r} + {ell!r} vanishes"
                )
            corners.append(k / den**2)
    return max(min(corners), 0.0)


def cor41_beta(m: float, big_m: float) -> float:
    """Alternative pair-only coefficient min{m, M} / (m + M)^2.

    Kept for side-by-side comparison with the uniform four-corner formula;
    the two disagree except when the ratio's sup equals 1.
    """
    den = m + big_m
    if abs(den) <= 1e-12:
        raise ValueError("degenerate denominator: m + M vanishes")
    return min(m / den**2, big_m / den**2)


def corner_function(r_base, k: float, ell: float):
    """(R^2-1)(R^2k-1)(R^l+1)^2 / (R^(1+k+l)-1)^2 for R > 0, continued through
    R = 1 by its limit 16k/(1+k+l)^2.

    Evaluated through expm1 of s = log(R) so the R -> 1 cancellation is benign.
    """
    if abs(1.0 + k + ell) <= 1e-12:
        raise ValueError("degenerate exponent: 1 + k + l vanishes")
    r_arr = np.asarray(r_base, dtype=float)
    if np.any(r_arr <= 0.0):
        raise ValueError("R must be positive")
    s = np.log(r_arr)
    limit = 16.0 * k / (1.0 + k + ell) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        num = np.expm1(2.0 * s) * np.expm1(2.0 * k * s) * (np.exp(ell * s) + 1.0) ** 2
        den = np.expm1((1.0 + k + ell) * s) ** 2
        out = np.where(s == 0.0, limit, num / np.where(den == 0.0, 1.0, den))
    if out.ndim == 0:
        return float(out)
    return out


def l_value(triple: FunctionTriple, x: float, y: float) -> float:
    """Two-point ratio (f^2 diff)(g^2 diff)(h sum)^2 / (fgh diff)^2.

    Returns +inf when the denominator is negligible against the numerator
    scale; the diagonal x == y is excluded (0/0).
    """
    if x == y:
        raise ValueError("diagonal x == y is excluded")
    for fn in (triple.f, triple.g, triple.h):
        fn.check_domain(np.array([x, y]))
    fx, fy = float(triple.f.value(x)), float(triple.f.value(y))
    gx, gy = float(triple.g.value(x)), float(triple.g.value(y))
    hx, hy = float(triple.h.value(x)), float(triple.h.value(y))
    num = (fx**2 - fy**2) * (gx**2 - gy**2) * (hx + hy) ** 2
    d = fx * gx * hx - fy * gy * hy
    if abs(d) < 1e-14 * math.sqrt(abs(num)) or d == 0.0:
        return math.inf
    return num / d**2


@dataclass(frozen=True)
class LScanResult:
    min_value: float
    arg_x: float
    arg_y: float
    grid_size: int


def l_scan_min(triple: FunctionTriple, k: int = 200) -> LScanResult:
    """Minimum of the two-point ratio over all off-diagonal pairs of a
    k-point grid on [eps, 1], with the argmin pair."""
    if k < 2:
        raise ValueError("scan grid needs at least 2 points")
    grid = np.linspace(triple.eps, 1.0, k)
    fv = np.asarray(triple.f.value(grid), dtype=float)
    gv = np.asarray(triple.g.value(grid), dtype=float)
    hv = np.asarray(triple.h.value(grid), dtype=float)
    num = (
        (fv[:, None] ** 2 - fv[None, :] ** 2)
        * (gv[:, None] ** 2 - gv[None, :] ** 2)
        * (hv[:, None] + hv[None, :]) ** 2
    )
    prod = fv * gv * hv
    den = prod[:, None] - prod[None, :]
    bad = np.abs(den) < 1e-14 * np.sqrt(np.abs(num))
    np.fill_diagonal(bad, True)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(bad, np.inf, num / np.where(bad, 1.0, den) ** 2)
    flat = int(np.argmin(values))
    i, j = divmod(flat, k)
    return LScanResult(
        min_value=float(values[i, j]),
        arg_x=float(grid[i]),
        arg_y=float(grid[j]),
        grid_size=k,
    )


def _lemma41_regime_ok(a: float, b: float, c: float) -> bool:
    first = a >= 0.0 and b >= 0.0 and c >= 0.0 and 0.0 < a + b <= c
    second = a >= 0.0 and b >= 0.0 and c <= 0.0 and a + b + c > 0.0
    return first or second


def lemma41_lhs(a: float, b: float, c: float, r):
    """(e^{2ar}-1)(e^{2br}-1)(e^{cr}+1)^2 / (e^{(a+b+c)r}-1)^2, with the r -> 0
    limit 16ab/(a+b+c)^2 substituted at r == 0. Stable near zero via expm1."""
    r_arr = np.asarray(r, dtype=float)
    limit = 16.0 * a * b / (a + b + c) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        num = (
            np.expm1(2.0 * a * r_arr)
            * np.expm1(2.0 * b * r_arr)
            * (np.exp(c * r_arr) + 1.0) ** 2
        )
        den = np.expm1((a + b + c) * r_arr) ** 2
        out = np.where(r_arr == 0.0, limit, num / np.where(den == 0.0, 1.0, den))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class Lemma41Report:
    a: float
    b: float
    c: float
    rhs: float
    min_margin: float
    argmin_r: float
    violations: int
    limit_gap: float        # |lhs(r -> 0) - rhs|, evaluated at r = 1e-6
    r_grid: np.ndarray = field(repr=False)
    margins: np.ndarray = field(repr=False)


def lemma41_check(
    a: float,
    b: float,
    c: float,
    r_grid=None,
    *,
    rmax: float = 10.0,
    steps: int = 2000,
    slack: float = 1e-12,
) -> Lemma41Report:
    """Margins of the scalar exponential inequality over an r grid.

    The parameters must satisfy one of the two admissible regimes
    (a, b, c >= 0 with 0 < a + b <= c, or a, b >= 0, c <= 0 with
    a + b + c > 0). The band |r| < 1e-4 is excluded from the grid to avoid
    cancellation; the r -> 0 limit is checked separately. A margin below
    -slack * max(1, rhs) counts as a violation, which absorbs float noise on
    the equality family (a == b with c == a + b makes the margin identically
    zero).
    """
    if not _lemma41_regime_ok(a, b, c):
        raise ValueError(
            f"parameters (a={a}, b={b}, c={c}) violate both admissible regimes"
        )
    if r_grid is None:
        r_grid = np.linspace(-rmax, rmax, steps)
    r_grid = np.asarray(r_grid, dtype=float)
    r_grid = r_grid[np.abs(r_grid) >= 1e-4]
    if r_grid.size == 0:
        raise ValueError("r grid is empty after excluding the |r| < 1e-4 band")
    rhs = 16.0 * a * b / (a + b + c) ** 2
    margins = np.asarray(lemma41_lhs(a, b, c, r_grid), dtype=float) - rhs
    worst = int(np.argmin(margins))
    violations = int(np.sum(margins < -slack * max(1.0, rhs)))
    limit_gap = abs(float(lemma41_lhs(a, b, c, 1e-6)) - rhs)
    return Lemma41Report(
        a=a,
        b=b,
        c=c,
        rhs=rhs,
        min_margin=float(margins[worst]),
        argmin_r=float(r_grid[worst]),
        violations=violations,
        limit_gap=limit_gap,
        r_grid=r_grid,
        margins=margins,
    )
