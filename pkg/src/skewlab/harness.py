"""Randomized verification campaigns for the uncertainty-relation inequalities.

Sampling is counter-based: every (dim, sample-index) pair owns a Philox
stream, so campaigns are reproducible bit-for-bit regardless of how samples
are partitioned across workers.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .functions import (
    Assumption,
    Const,
    FunctionTriple,
    PairClass,
    beta_coefficient,
    check_assumption,
    classify_pair,
    function_from_spec,
    function_to_spec,
    ratio_bounds,
    triple_from_spec,
    triple_to_spec,
)
from .linalg import (
    DensityMatrix,
    HermitianMatrix,
    element_table,
    hermitian_eigen,
    matrix_to_json,
)

__all__ = [
    "InequalityId",
    "InequalitySetting",
    "CampaignConfig",
    "SampleRecord",
    "InequalityStats",
    "CampaignReport",
    "ConfigError",
    "sample_density",
    "sample_observable",
    "sample_unitary",
    "evaluate_inequality",
    "run_campaign",
    "search_counterexample",
    "config_from_dict",
]


class ConfigError(ValueError):
    """Campaign configuration is malformed or inconsistent."""


class InequalityId(enum.Enum):
    HEISENBERG_21 = "HEISENBERG_21"
    SCHRODINGER = "SCHRODINGER"
    LUO_23 = "LUO_23"
    THM21_WYD = "THM21_WYD"
    THM22_GWYD = "THM22_GWYD"
    THM23_TILDE = "THM23_TILDE"
    THM31_FGH = "THM31_FGH"
    COR41_PAIR = "COR41_PAIR"
    CHAIN_24 = "CHAIN_24"
    CHAIN_25 = "CHAIN_25"
    CHAIN_27 = "CHAIN_27"
    NAIVE_WY_SHOULD_FAIL = "NAIVE_WY_SHOULD_FAIL"


# ids taking a single interpolation exponent vs ids with no parameters at all
_ALPHA_IDS = {InequalityId.THM21_WYD, InequalityId.CHAIN_25, InequalityId.CHAIN_27}
_PLAIN_IDS = {
    InequalityId.HEISENBERG_21,
    InequalityId.SCHRODINGER,
    InequalityId.LUO_23,
    InequalityId.CHAIN_24,
    InequalityId.NAIVE_WY_SHOULD_FAIL,
}


@dataclass(frozen=True)
class InequalitySetting:
    """One inequality to verify, plus its (possibly fixed) parameters.

    ``alpha`` may be a number (fixed), a tuple (cycled over sample indices)
    or None (drawn uniformly from the id's valid range per sample). The
    two-parameter family takes either fixed (alpha, beta) or a regime tag
    restricting where the pair is drawn.
    """

    id: InequalityId
    alpha: float | tuple[float, ...] | None = None
    beta: float | None = None
    regime: str | None = None            # THM22: "low" | "high" | "both"
    triple: FunctionTriple | None = None
    assert_pass: bool | None = None

    def __post_init__(self):
        if isinstance(self.alpha, (int, float)) and not isinstance(self.alpha, bool):
            object.__setattr__(self, "alpha", float(self.alpha))
        if isinstance(self.alpha, (list, tuple)):
            object.__setattr__(self, "alpha", tuple(float(x) for x in self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", float(self.beta))
        ineq = self.id
        if self.alpha is not None and ineq not in _ALPHA_IDS | {
            InequalityId.THM22_GWYD,
            InequalityId.THM23_TILDE,
        }:
            raise ConfigError(f"{ineq.value} takes no alpha parameter")
        if self.beta is not None and ineq not in {
            InequalityId.THM22_GWYD,
            InequalityId.THM23_TILDE,
        }:
            raise ConfigError(f"{ineq.value} takes no beta parameter")
        if self.regime is not None:
            if ineq is not InequalityId.THM22_GWYD:
                raise ConfigError(f"{ineq.value} takes no regime tag")
            if self.regime not in ("low", "high", "both"):
                raise ConfigError(f"unknown regime {self.regime!r}")
        if self.triple is not None and ineq not in (
            InequalityId.THM31_FGH,
            InequalityId.COR41_PAIR,
        ):
            raise ConfigError(f"{ineq.value} takes no function triple")
        if ineq in (InequalityId.THM31_FGH, InequalityId.COR41_PAIR):
            if self.triple is None:
                raise ConfigError(f"{ineq.value} requires functions to evaluate")
        if ineq is InequalityId.THM22_GWYD and self.alpha is not None:
            if self.beta is None or not isinstance(self.alpha, float):
                raise ConfigError("fixed THM22 parameters need scalar alpha and beta")
            _check_thm22_regime(self.alpha, self.beta)

    @property
    def assertive(self) -> bool:
        if self.assert_pass is not None:
            return self.assert_pass
        return self.id is not InequalityId.NAIVE_WY_SHOULD_FAIL

    def to_spec(self) -> dict:
        doc: dict = {"id": self.id.value}
        if self.alpha is not None:
            doc["alpha"] = list(self.alpha) if isinstance(self.alpha, tuple) else self.alpha
        if self.beta is not None:
            doc["beta"] = self.beta
        if self.regime is not None:
            doc["regime"] = self.regime
        if self.triple is not None:
            if self.id is InequalityId.COR41_PAIR:
                doc["f"] = function_to_spec(self.triple.f)
                doc["g"] = function_to_spec(self.triple.g)
                doc["eps"] = self.triple.eps
            else:
                doc["triple"] = triple_to_spec(self.triple)
        if self.assert_pass is not None:
            doc["assert_pass"] = self.assert_pass
        return doc


def _check_thm22_regime(alpha: float, beta: float) -> None:
    if alpha < 0.0 or beta < 0.0:
        raise ConfigError(f"THM22 exponents must be nonnegative: ({alpha}, {beta})")
    s = alpha + beta
    if 0.5 < s < 1.0:
        raise ConfigError(
            f"THM22 excludes 1/2 < alpha + beta < 1, got alpha + beta = {s}"
        )


@dataclass(frozen=True)
class CampaignConfig:
    """Seeded campaign: which inequalities, which dimensions, how many samples."""

    seed: int
    dims: tuple[int, ...]
    samples_per_dim: int
    inequalities: tuple[InequalitySetting, ...]
    delta: float = 1e-3     # mixing weight toward the maximally mixed state
    slack: float = 1e-9     # relative violation threshold

    def __post_init__(self):
        if not (0 <= self.seed < 2**64):
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not self.dims or any(n < 2 for n in self.dims):
            raise ConfigError("dims must be a nonempty list of integers >= 2")
        if any(n >= 4096 for n in self.dims):
            raise ConfigError("dims above 4095 are not supported")
        if self.samples_per_dim < 1:
            raise ConfigError("samples_per_dim must be >= 1")
        if len(self.inequalities) > 256:
            raise ConfigError("at most 256 inequality entries are supported")
        if not (0.0 < self.delta < 1.0):
            raise ConfigError("delta must lie in (0, 1)")
        if self.slack < 0.0:
            raise ConfigError("slack must be nonnegative")
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "samples_per_dim": self.samples_per_dim,
            "delta": self.delta,
            "slack": self.slack,
            "inequalities": [s.to_spec() for s in self.inequalities],
        }


_TOP_KEYS = {"seed", "dims", "samples_per_dim", "delta", "slack", "inequalities"}
_ENTRY_KEYS = {
    InequalityId.HEISENBERG_21: set(),
    InequalityId.SCHRODINGER: set(),
    InequalityId.LUO_23: set(),
    InequalityId.THM21_WYD: {"alpha"},
    InequalityId.THM22_GWYD: {"alpha", "beta", "regime"},
    InequalityId.THM23_TILDE: {"alpha", "beta"},
    InequalityId.THM31_FGH: {"triple"},
    InequalityId.COR41_PAIR: {"f", "g", "eps"},
    InequalityId.CHAIN_24: set(),
    InequalityId.CHAIN_25: {"alpha"},
    InequalityId.CHAIN_27: {"alpha"},
    InequalityId.NAIVE_WY_SHOULD_FAIL: set(),
}


def _setting_from_entry(doc: dict) -> InequalitySetting:
    if not isinstance(doc, dict) or "id" not in doc:
        raise ConfigError(f"inequality entry must be an object with an 'id': {doc!r}")
    doc = dict(doc)
    raw_id = doc.pop("id")
    try:
        ineq = InequalityId(raw_id)
    except ValueError:
        raise ConfigError(f"unknown inequality id {raw_id!r}") from None
    assert_pass = doc.pop("assert_pass", None)
    if assert_pass is not None and not isinstance(assert_pass, bool):
        raise ConfigError("assert_pass must be a boolean")
    unknown = set(doc) - _ENTRY_KEYS[ineq]
    if unknown:
        raise ConfigError(f"unknown keys for {ineq.value}: {sorted(unknown)}")
    try:
        triple = None
        if ineq is InequalityId.THM31_FGH:
            triple = triple_from_spec(doc.pop("triple"))
        elif ineq is InequalityId.COR41_PAIR:
            eps = float(doc.pop("eps", 1e-6))
            f = function_from_spec(doc.pop("f"), eps=eps)
            g = function_from_spec(doc.pop("g"), eps=eps)
            triple = FunctionTriple(f=f, g=g, h=Const(c=1.0, eps=eps), eps=eps)
        alpha = doc.pop("alpha", None)
        if isinstance(alpha, list):
            alpha = tuple(float(x) for x in alpha)
        elif alpha is not None:
            alpha = float(alpha)
        beta = doc.pop("beta", None)
        beta = None if beta is None else float(beta)
        return InequalitySetting(
            id=ineq,
            alpha=alpha,
            beta=beta,
            regime=doc.pop("regime", None),
            triple=triple,
            assert_pass=assert_pass,
        )
    except KeyError as exc:
        raise ConfigError(f"{ineq.value} entry misses field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad {ineq.value} entry: {exc}") from exc


def config_from_dict(doc: dict) -> CampaignConfig:
    """Validate and build a campaign config from parsed JSON; unknown keys
    are rejected outright."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = [k for k in ("seed", "dims", "samples_per_dim", "inequalities") if k not in doc]
    if missing:
        raise ConfigError(f"config misses required keys: {missing}")
    entries = doc["inequalities"]
    if not isinstance(entries, list):
        raise ConfigError("'inequalities' must be a list")
    try:
        return CampaignConfig(
            seed=int(doc["seed"]),
            dims=tuple(int(n) for n in doc["dims"]),
            samples_per_dim=int(doc["samples_per_dim"]),
            delta=float(doc.get("delta", 1e-3)),
            slack=float(doc.get("slack", 1e-9)),
            inequalities=tuple(_setting_from_entry(e) for e in entries),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


# --------------------------------------------------------------------------
# samplers


def _ginibre(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)


def sample_density(n: int, rng: np.random.Generator, delta: float = 1e-3) -> DensityMatrix:
    """Random faithful state: a normalized Wishart matrix mixed with the
    maximally mixed state, so the smallest eigenvalue is at least delta/n."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    g = _ginibre(n, rng)
    w = g @ g.conj().T
    rho = (1.0 - delta) * w / float(np.trace(w).real) + (delta / n) * np.eye(n)
    return DensityMatrix(rho)


def sample_observable(n: int, rng: np.random.Generator, scale: float = 1.0) -> HermitianMatrix:
    """Gaussian Hermitian observable (symmetrized complex Gaussian matrix)."""
    g = scale * _ginibre(n, rng)
    return HermitianMatrix((g + g.conj().T) / 2)


def sample_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR factorization of a Gaussian matrix."""
    q, r = np.linalg.qr(_ginibre(n, rng))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


_PARAM_SALT = 0xA5A5_5A5A_DEAD_BEEF


def _matrix_rng(seed: int, dim: int, index: int) -> np.random.Generator:
    key = np.array([seed, (dim << 44) | index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _param_rng(seed: int, dim: int, index: int, ordinal: int) -> np.random.Generator:
    key = np.array(
        [seed ^ _PARAM_SALT, (ordinal << 56) | (dim << 44) | index], dtype=np.uint64
    )
    return np.random.Generator(np.random.Philox(key=key))


def _draw_sample(seed, dim, index, delta):
    rng = _matrix_rng(seed, dim, index)
    rho = sample_density(dim, rng, delta)
    a = sample_observable(dim, rng)
    b = sample_observable(dim, rng)
    return rho, a, b


# --------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True, eq=False)
class _SampleContext:
    rho: DensityMatrix
    a: HermitianMatrix
    b: HermitianMatrix
    lam: np.ndarray
    ta: np.ndarray   # centered A in the state eigenbasis
    tb: np.ndarray
    wa: np.ndarray   # |ta|^2
    wb: np.ndarray


def _make_context(rho, a, b) -> _SampleContext:
    decomp = hermitian_eigen(rho)
    ta = element_table(decomp, a).entries
    tb = element_table(decomp, b).entries
    return _SampleContext(
        rho=rho,
        a=a,
        b=b,
        lam=decomp.eigenvalues,
        ta=ta,
        tb=tb,
        wa=np.abs(ta) ** 2,
        wb=np.abs(tb) ** 2,
    )


def _total(lam, w) -> float:
    return float(lam @ w.sum(axis=1))


def _exchange(lam, w, s: float) -> float:
    return float(lam**s @ w @ lam ** (1.0 - s))


def _comm_trace_sq(weights: np.ndarray, ta, tb) -> float:
    """|Tr[diag(weights) [A, B]]|^2 in the eigenbasis."""
    t = np.einsum("i,ij,ji->", weights, ta, tb) - np.einsum(
        "i,ij,ji->", weights, tb, ta
    )
    return float(abs(t) ** 2)


def _u_value(i_val: float, j_val: float) -> float:
    return math.sqrt(max(i_val, 0.0) * max(j_val, 0.0))


def _wyd_iju(lam, w, alpha: float):
    t0 = _total(lam, w)
    ex = _exchange(lam, w, alpha)
    return t0 - ex, t0 + ex, t0


def _gwyd_iju(lam, w, alpha: float, beta: float):
    t0 = _total(lam, w)
    e_ab = _exchange(lam, w, alpha + beta)
    e_a = _exchange(lam, w, alpha)
    e_b = _exchange(lam, w, beta)
    i_val = 0.5 * (t0 + e_ab - e_a - e_b)
    j_val = 0.5 * (t0 + e_ab + e_a + e_b)
    return i_val, j_val


def _tilde_iju(lam, w, alpha: float, beta: float):
    t_s = float(lam ** (alpha + beta) @ w.sum(axis=1))
    ex = float(lam**alpha @ w @ lam**beta)
    return t_s - ex, t_s + ex


def _fgh_iju(lam, w, fv, gv, hv):
    row = w.sum(axis=1)
    t1 = float((fv * gv * hv) @ row)
    t2 = float((fv * gv) @ w @ hv)
    t3 = float(fv @ w @ (gv * hv))
    t4 = float(gv @ w @ (fv * hv))
    return 0.5 * (t1 + t2) - 0.5 * (t3 + t4), 0.5 * (t1 + t2) + 0.5 * (t3 + t4)


def _luo_u_from(lam, w) -> float:
    v = _total(lam, w)
    i_val = max(v - _exchange(lam, w, 0.5), 0.0)
    return math.sqrt(max(v**2 - (v - i_val) ** 2, 0.0))


def _chain_worst(values, names):
    """Worst link of a chain v0 <= v1 <= ... ; returns (upper, lower, link)."""
    worst = None
    for k in range(1, len(values)):
        margin = values[k] - values[k - 1]
        if worst is None or margin < worst[0]:
            worst = (margin, values[k], values[k - 1], names[k - 1])
    _, upper, lower, link = worst
    return upper, lower, link


@dataclass
class SampleRecord:
    """One inequality evaluated on one sampled (state, A, B) instance."""

    inequality: InequalityId
    dim: int
    index: int
    lhs: float
    rhs: float
    margin: float
    passed: bool
    params: dict
    state: np.ndarray | None = None
    obs_a: np.ndarray | None = None
    obs_b: np.ndarray | None = None

    def to_json(self) -> dict:
        doc = {
            "id": self.inequality.value,
            "dim": self.dim,
            "index": self.index,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
            "params": self.params,
        }
        doc["rho"] = None if self.state is None else matrix_to_json(self.state)
        doc["a"] = None if self.obs_a is None else matrix_to_json(self.obs_a)
        doc["b"] = None if self.obs_b is None else matrix_to_json(self.obs_b)
        return doc


@dataclass(frozen=True)
class _TriplePlan:
    """Per-setting precomputation for the function-triple inequalities."""

    triple: FunctionTriple
    assumption: Assumption
    beta: float


def _plan_triple(setting: InequalitySetting) -> _TriplePlan:
    triple = setting.triple
    assumption = check_assumption(triple)
    if setting.id is InequalityId.THM31_FGH and assumption is Assumption.NEITHER:
        raise ConfigError(
            "THM31_FGH requires the triple to satisfy one of the two "
            "divided-difference conditions; this one satisfies neither"
        )
    if setting.id is InequalityId.COR41_PAIR:
        kind, _, _ = classify_pair(triple.f, triple.g)
        if kind is not PairClass.MONOTONE:
            raise ConfigError("COR41_PAIR requires (f, g) to be a monotone pair")
    return _TriplePlan(
        triple=triple,
        assumption=assumption,
        beta=beta_coefficient(ratio_bounds(triple)),
    )


def _resolve_params(setting: InequalitySetting, index: int, seed: int, dim: int, ordinal: int) -> dict:
    """Fixed, cycled, or freshly drawn parameters for one sample."""
    ineq = setting.id
    if ineq in _PLAIN_IDS or ineq in (InequalityId.THM31_FGH, InequalityId.COR41_PAIR):
        return {}
    if ineq in _ALPHA_IDS:
        if isinstance(setting.alpha, tuple):
            return {"alpha": setting.alpha[index % len(setting.alpha)]}
        if setting.alpha is not None:
            return {"alpha": setting.alpha}
        rng = _param_rng(seed, dim, index, ordinal)
        return {"alpha": float(rng.random())}
    if ineq is InequalityId.THM22_GWYD:
        if isinstance(setting.alpha, float) and setting.beta is not None:
            return {"alpha": setting.alpha, "beta": setting.beta}
        rng = _param_rng(seed, dim, index, ordinal)
        u = rng.random(3)
        regime = setting.regime or "both"
        low = regime == "low" or (regime == "both" and u[0] < 0.5)
        s = 0.5 * u[1] if low else 1.0 + u[1]
        alpha = s * u[2]
        return {"alpha": float(alpha), "beta": float(s - alpha)}
    if ineq is InequalityId.THM23_TILDE:
        if setting.alpha is not None and setting.beta is not None:
            return {"alpha": setting.alpha, "beta": setting.beta}
        rng = _param_rng(seed, dim, index, ordinal)
        u = rng.random(2)
        return {"alpha": float(0.05 + 1.95 * u[0]), "beta": float(0.05 + 1.95 * u[1])}
    raise ConfigError(f"unhandled inequality {ineq}")


def _evaluate(
    setting: InequalitySetting,
    ctx: _SampleContext,
    params: dict,
    plan: _TriplePlan | None,
) -> tuple[float, float, dict]:
    """Return (lhs, rhs, extra-params) for one inequality instance."""
    lam, ta, tb, wa, wb = ctx.lam, ctx.ta, ctx.tb, ctx.wa, ctx.wb
    ineq = setting.id
    comm_sq = None
    if ineq in (
        InequalityId.HEISENBERG_21,
        InequalityId.SCHRODINGER,
        InequalityId.LUO_23,
        InequalityId.THM21_WYD,
        InequalityId.THM22_GWYD,
        InequalityId.NAIVE_WY_SHOULD_FAIL,
    ):
        comm_sq = _comm_trace_sq(lam, ta, tb)

    if ineq is InequalityId.HEISENBERG_21:
        return _total(lam, wa) * _total(lam, wb), 0.25 * comm_sq, {}

    if ineq is InequalityId.SCHRODINGER:
        cov = np.einsum("i,ij,ji->", lam, ta, tb)
        lhs = _total(lam, wa) * _total(lam, wb) - float(cov.real) ** 2
        return lhs, 0.25 * comm_sq, {}

    if ineq is InequalityId.LUO_23:
        return _luo_u_from(lam, wa) * _luo_u_from(lam, wb), 0.25 * comm_sq, {}

    if ineq is InequalityId.NAIVE_WY_SHOULD_FAIL:
        ia = max(_total(lam, wa) - _exchange(lam, wa, 0.5), 0.0)
        ib = max(_total(lam, wb) - _exchange(lam, wb, 0.5), 0.0)
        return ia * ib, 0.25 * comm_sq, {}

    if ineq is InequalityId.THM21_WYD:
        alpha = params["alpha"]
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        ia, ja, _ = _wyd_iju(lam, wa, alpha)
        ib, jb, _ = _wyd_iju(lam, wb, alpha)
        lhs = _u_value(ia, ja) * _u_value(ib, jb)
        return lhs, alpha * (1.0 - alpha) * comm_sq, {}

    if ineq is InequalityId.THM22_GWYD:
        alpha, beta = params["alpha"], params["beta"]
        _check_thm22_regime(alpha, beta)
        ia, ja = _gwyd_iju(lam, wa, alpha, beta)
        ib, jb = _gwyd_iju(lam, wb, alpha, beta)
        lhs = _u_value(ia, ja) * _u_value(ib, jb)
        return lhs, alpha * beta * comm_sq, {}

    if ineq is InequalityId.THM23_TILDE:
        alpha, beta = params["alpha"], params["beta"]
        if alpha < 0.0 or beta < 0.0 or alpha * beta == 0.0:
            raise ValueError(f"need alpha, beta > 0, got ({alpha}, {beta})")
        ia, ja = _tilde_iju(lam, wa, alpha, beta)
        ib, jb = _tilde_iju(lam, wb, alpha, beta)
        lhs = _u_value(ia, ja) * _u_value(ib, jb)
        rhs = (
            alpha
            * beta
            / (alpha + beta) ** 2
            * _comm_trace_sq(lam ** (alpha + beta), ta, tb)
        )
        return lhs, rhs, {}

    if ineq in (InequalityId.THM31_FGH, InequalityId.COR41_PAIR):
        triple = plan.triple
        fv = np.asarray(triple.f.value(lam), dtype=float)
        gv = np.asarray(triple.g.value(lam), dtype=float)
        hv = np.asarray(triple.h.value(lam), dtype=float)
        ia, ja = _fgh_iju(lam, wa, fv, gv, hv)
        ib, jb = _fgh_iju(lam, wb, fv, gv, hv)
        lhs = _u_value(ia, ja) * _u_value(ib, jb)
        rhs = plan.beta * _comm_trace_sq(fv * gv * hv, ta, tb)
        return lhs, rhs, {"beta": plan.beta, "assumption": plan.assumption.value}

    if ineq is InequalityId.CHAIN_24:
        v = _total(lam, wa)
        i_val = max(v - _exchange(lam, wa, 0.5), 0.0)
        u_val = _luo_u_from(lam, wa)
        upper, lower, link = _chain_worst(
            (0.0, i_val, u_val, v), ("I>=0", "U>=I", "V>=U")
        )
        return upper, lower, {"link": link}

    if ineq is InequalityId.CHAIN_25:
        alpha = params["alpha"]
        i_a, j_a, _ = _wyd_iju(lam, wa, alpha)
        i_h, j_h, _ = _wyd_iju(lam, wa, 0.5)
        upper, lower, link = _chain_worst(
            (i_a, i_h, j_h, j_a),
            ("I_half>=I_alpha", "J_half>=I_half", "J_alpha>=J_half"),
        )
        return upper, lower, {"alpha": alpha, "link": link}

    if ineq is InequalityId.CHAIN_27:
        alpha = params["alpha"]
        i_a, j_a, _ = _wyd_iju(lam, wa, alpha)
        u_a = _u_value(i_a, j_a)
        u_half = _luo_u_from(lam, wa)
        upper, lower, link = _chain_worst(
            (0.0, i_a, u_a, u_half),
            ("I_alpha>=0", "U_alpha>=I_alpha", "U>=U_alpha"),
        )
        return upper, lower, {"alpha": alpha, "link": link}

    raise ConfigError(f"unhandled inequality {ineq}")


def _passes(margin: float, lhs: float, rhs: float, slack: float) -> bool:
    return margin >= -slack * max(abs(lhs), abs(rhs), 1.0)


def evaluate_inequality(
    setting: InequalitySetting | InequalityId | str,
    rho: DensityMatrix,
    a: HermitianMatrix,
    b: HermitianMatrix,
    params: dict | None = None,
    slack: float = 1e-9,
    *,
    index: int = 0,
    _ctx: _SampleContext | None = None,
    _plan: _TriplePlan | None = None,
) -> SampleRecord:
    """Evaluate one inequality on explicit matrices.

    ``params`` supplies resolved numbers (e.g. {"alpha": 0.3}) where the
    setting does not fix them. Regime guards are enforced here: parameters
    outside an inequality's validity region raise instead of producing a
    meaningless margin.
    """
    if isinstance(setting, str):
        setting = InequalityId(setting)
    if isinstance(setting, InequalityId):
        setting = InequalitySetting(id=setting)
    ctx = _ctx if _ctx is not None else _make_context(rho, a, b)
    plan = _plan
    if plan is None and setting.triple is not None:
        plan = _plan_triple(setting)
    merged = dict(params or {})
    if "alpha" not in merged and isinstance(setting.alpha, float):
        merged["alpha"] = setting.alpha
    if "beta" not in merged and setting.beta is not None:
        merged["beta"] = setting.beta
    if setting.id in _ALPHA_IDS and "alpha" not in merged:
        raise ValueError(f"{setting.id.value} needs an 'alpha' parameter")
    if setting.id in (InequalityId.THM22_GWYD, InequalityId.THM23_TILDE):
        if "alpha" not in merged or "beta" not in merged:
            raise ValueError(f"{setting.id.value} needs 'alpha' and 'beta'")
    lhs, rhs, extra = _evaluate(setting, ctx, merged, plan)
    margin = lhs - rhs
    return SampleRecord(
        inequality=setting.id,
        dim=ctx.rho.dim,
        index=index,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        passed=_passes(margin, lhs, rhs, slack),
        params={**merged, **extra},
        state=np.asarray(rho),
        obs_a=np.asarray(a),
        obs_b=np.asarray(b),
    )


# --------------------------------------------------------------------------
# campaigns


@dataclass
class InequalityStats:
    setting: dict
    samples: int
    violations: int
    min_margin: float
    worst: SampleRecord | None

    def to_json(self) -> dict:
        return {
            "setting": self.setting,
            "samples": self.samples,
            "violations": self.violations,
            "min_margin": self.min_margin,
            "worst_case": None if self.worst is None else self.worst.to_json(),
        }


@dataclass
class CampaignReport:
    config: dict
    config_hash: str
    stats: list[InequalityStats]
    wall_time: float
    rows: list[tuple] = field(default_factory=list, repr=False)
    # rows: (id-string, dim, index, lhs, rhs, margin, passed)

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "config_hash": self.config_hash,
            "inequalities": [s.to_json() for s in self.stats],
            "wall_time_seconds": self.wall_time,
        }

    def to_json_text(self, indent: int = 2) -> str:
        return json.dumps(self.to_json(), indent=indent, sort_keys=True)

    def csv_rows(self):
        yield "id,n,lhs,rhs,margin,pass"
        for ineq, dim, _idx, lhs, rhs, margin, passed in self.rows:
            yield (
                f"{ineq},{dim},{lhs!r},{rhs!r},{margin!r},{str(passed).lower()}"
            )

    @property
    def failed(self) -> bool:
        """True when an assertive inequality recorded violations."""
        for s in self.stats:
            assertive = s.setting.get("assert_pass")
            if assertive is None:
                assertive = s.setting["id"] != InequalityId.NAIVE_WY_SHOULD_FAIL.value
            if assertive and s.violations:
                return True
        return False


def config_hash(config: CampaignConfig) -> str:
    text = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _block_rows(config: CampaignConfig, plans, dim: int, start: int, stop: int):
    """Evaluate every configured inequality on samples [start, stop) of one
    dimension; returns one light row list per inequality entry."""
    out = [[] for _ in config.inequalities]
    for idx in range(start, stop):
        rho, a, b = _draw_sample(config.seed, dim, idx, config.delta)
        ctx = _make_context(rho, a, b)
        for ordinal, setting in enumerate(config.inequalities):
            params = _resolve_params(setting, idx, config.seed, dim, ordinal)
            lhs, rhs, _ = _evaluate(setting, ctx, params, plans[ordinal])
            margin = lhs - rhs
            out[ordinal].append(
                (idx, lhs, rhs, margin, _passes(margin, lhs, rhs, config.slack))
            )
    return out


def _worker_entry(args):
    return _block_rows(*args)


def run_campaign(config: CampaignConfig, threads: int | None = None) -> CampaignReport:
    """Run every configured inequality over the sampled instances.

    Deterministic for a fixed config: the report (minus wall time) does not
    depend on the worker count, which defaults to the SKEWLAB_THREADS
    environment variable.
    """
    t_start = time.perf_counter()
    plans = [
        _plan_triple(s) if s.triple is not None else None for s in config.inequalities
    ]
    if threads is None:
        threads = int(os.environ.get("SKEWLAB_THREADS", "1") or "1")
    threads = max(1, threads)

    tasks = []
    for dim in config.dims:
        chunk = max(1, -(-config.samples_per_dim // (threads * 4)))
        for start in range(0, config.samples_per_dim, chunk):
            stop = min(start + chunk, config.samples_per_dim)
            tasks.append((dim, start, stop))

    if threads == 1:
        blocks = [_block_rows(config, plans, *task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            blocks = list(
                pool.map(_worker_entry, [(config, plans, *task) for task in tasks])
            )

    stats: list[InequalityStats] = []
    all_rows: list[tuple] = []
    for ordinal, setting in enumerate(config.inequalities):
        violations = 0
        best: tuple | None = None  # (margin, dim_pos, index, lhs, rhs, passed)
        count = 0
        for (dim, _start, _stop), block in zip(tasks, blocks):
            dim_pos = config.dims.index(dim)
            for idx, lhs, rhs, margin, passed in block[ordinal]:
                count += 1
                if not passed:
                    violations += 1
                key = (margin, dim_pos, idx)
                if best is None or key < (best[0], best[1], best[2]):
                    best = (margin, dim_pos, idx, lhs, rhs, passed)
                all_rows.append(
                    (setting.id.value, dim, idx, lhs, rhs, margin, passed)
                )
        worst = None
        if best is not None:
            margin, dim_pos, idx, lhs, rhs, passed = best
            dim = config.dims[dim_pos]
            rho, a, b = _draw_sample(config.seed, dim, idx, config.delta)
            params = _resolve_params(setting, idx, config.seed, dim, ordinal)
            worst = evaluate_inequality(
                setting,
                rho,
                a,
                b,
                params=params,
                slack=config.slack,
                index=idx,
                _plan=plans[ordinal],
            )
        stats.append(
            InequalityStats(
                setting=setting.to_spec(),
                samples=count,
                violations=violations,
                min_margin=best[0] if best is not None else math.inf,
                worst=worst,
            )
        )

    return CampaignReport(
        config=config.to_dict(),
        config_hash=config_hash(config),
        stats=stats,
        wall_time=time.perf_counter() - t_start,
        rows=all_rows,
    )


def search_counterexample(
    setting: InequalitySetting | InequalityId | str,
    budget: int,
    seed: int,
    *,
    dim: int = 2,
    delta: float = 1e-3,
    slack: float = 1e-9,
) -> SampleRecord | None:
    """Scan seeded samples for the first violating instance.

    Returns the full violating record (matrices included), or None when the
    budget is exhausted without a violation.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if isinstance(setting, str):
        setting = InequalityId(setting)
    if isinstance(setting, InequalityId):
        setting = InequalitySetting(id=setting)
    plan = _plan_triple(setting) if setting.triple is not None else None
    for idx in range(budget):
        rho, a, b = _draw_sample(seed, dim, idx, delta)
        ctx = _make_context(rho, a, b)
        params = _resolve_params(setting, idx, seed, dim, 0)
        lhs, rhs, extra = _evaluate(setting, ctx, params, plan)
        margin = lhs - rhs
        if not _passes(margin, lhs, rhs, slack):
            return SampleRecord(
                inequality=setting.id,
                dim=dim,
                index=idx,
                lhs=lhs,
                rhs=rhs,
                margin=margin,
                passed=False,
                params={**params, **extra},
                state=np.asarray(rho),
                obs_a=np.asarray(a),
                obs_b=np.asarray(b),
            )
    return None
