"""Distribution families: densities, survival functions and tail indices.

Every family describes a random vector X in R^d through the law of its
Euclidean norm |X| plus (where meaningful) a sign or direction component.
The norm machinery is what the quantizer asymptotics consume:

* ``survival``              P(|X| > x)
* ``generalized_survival``  E[|X|^r 1{|X| > x}]
* ``tail_indices``          critical exponents and radius-growth constants

All evaluation is pure once a spec exists; sampling takes an explicit seed
and owns its generator, so independent tasks must derive distinct seeds
(see ``derive_seed``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize, special

from .errors import (
    BoundedSupport,
    DimensionMismatch,
    MomentUnavailable,
    UnsupportedFamily,
)

__all__ = [
    "DistributionSpec",
    "TailReport",
    "pdf",
    "survival",
    "generalized_survival",
    "abs_moment",
    "sample",
    "tail_indices",
    "inverse_survival",
    "quantile_1d",
    "support_interval",
    "derive_seed",
    "spec_to_dict",
    "spec_from_dict",
    "spec_to_json",
    "spec_from_json",
]

FAMILIES = (
    "uniform",
    "exponential",
    "gamma",
    "double_gamma",
    "weibull",
    "pareto",
    "logistic",
    "exponential_power",
    "log_polynomial",
)

# Families whose support is a half line [0 or 1, +infinity).
_ONE_SIDED = frozenset({"exponential", "gamma", "weibull", "pareto"})
# Symmetric families on the real line (d = 1) or radial laws in R^d.
_SYMMETRIC = frozenset({"double_gamma", "logistic", "exponential_power", "log_polynomial"})


@dataclass(frozen=True)
class DistributionSpec:
    """Closed description of one distribution family with its parameters.

    ``family`` is one of ``FAMILIES``; unused parameter slots stay ``None``.
    The standard normal on R^d is represented as the radial law with density
    proportional to exp(-|x|^2 / 2), i.e. ``exponential_power`` with c = 0,
    theta = 1/2, kappa = 2.
    """

    family: str
    dimension: int = 1
    lambda_: float | None = None
    gamma: float | None = None
    kappa: float | None = None
    a: float | None = None
    b: float | None = None
    beta: float | None = None
    c: float | None = None
    theta: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        if self.dimension < 1 or int(self.dimension) != self.dimension:
            raise ValueError("dimension must be a positive integer")
        if self.family not in ("exponential_power", "log_polynomial") and self.dimension != 1:
            raise DimensionMismatch(f"{self.family} is one-dimensional")
        if self.family == "uniform":
            if not (self.a is not None and self.b is not None and self.a < self.b):
                raise ValueError("uniform requires a < b")
        elif self.family == "exponential":
            if not (self.lambda_ is not None and self.lambda_ > 0):
                raise ValueError("exponential requires lambda > 0")
        elif self.family in ("gamma", "double_gamma"):
            if not (self.a is not None and self.a > 0 and self.lambda_ is not None and self.lambda_ > 0):
                raise ValueError(f"{self.family} requires a > 0 and lambda > 0")
        elif self.family == "weibull":
            if not (self.kappa is not None and self.kappa > 0):
                raise ValueError("weibull requires kappa > 0")
        elif self.family == "pareto":
            if not (self.gamma is not None and self.gamma > 0):
                raise ValueError("pareto requires gamma > 0")
        elif self.family == "exponential_power":
            if not (self.theta is not None and self.theta > 0 and self.kappa is not None and self.kappa > 0):
                raise ValueError("exponential_power requires theta > 0 and kappa > 0")
            if self.c is None or self.c <= -self.dimension:
                raise ValueError("exponential_power requires c > -dimension")
        elif self.family == "log_polynomial":
            if self.c is None or self.c <= self.dimension:
                raise ValueError("log_polynomial requires c > dimension")
            # Integrability of (log rho)^beta near rho = 1.
            if self.beta is None or self.beta <= -1:
                raise ValueError("log_polynomial requires beta > -1")

    # -- factories ---------------------------------------------------------

    @classmethod
    def uniform(cls, a, b):
        return cls("uniform", a=float(a), b=float(b))

    @classmethod
    def exponential(cls, lam=1.0):
        return cls("exponential", lambda_=float(lam))

    @classmethod
    def gamma_law(cls, a, lam):
        return cls("gamma", a=float(a), lambda_=float(lam))

    @classmethod
    def double_gamma(cls, a, lam):
        return cls("double_gamma", a=float(a), lambda_=float(lam))

    @classmethod
    def weibull(cls, kappa):
        return cls("weibull", kappa=float(kappa))

    @classmethod
    def pareto(cls, gamma):
        return cls("pareto", gamma=float(gamma))

    @classmethod
    def logistic(cls):
        return cls("logistic")

    @classmethod
    def exponential_power(cls, c, theta, kappa, dimension=1):
        return cls("exponential_power", dimension=int(dimension), c=float(c),
                   theta=float(theta), kappa=float(kappa))

    @classmethod
    def log_polynomial(cls, beta, c, dimension=1):
        return cls("log_polynomial", dimension=int(dimension), beta=float(beta), c=float(c))

    @classmethod
    def normal(cls, dimension=1):
        return cls.exponential_power(c=0.0, theta=0.5, kappa=2.0, dimension=dimension)

    @property
    def is_normal(self):
        return (self.family == "exponential_power" and self.c == 0.0
                and self.theta == 0.5 and self.kappa == 2.0)


@dataclass(frozen=True)
class TailReport:
    """Tail exponents and radius-growth constants for one (spec, r) pair.

    ``kind`` is ``"exponential"`` or ``"polynomial"``.  For exponential
    tails the sharp constant scales (log n)^(1/kappa); for polynomial tails
    the constants describe the exact limit of log(rho_n)/log(n).  The
    proven bracket always satisfies lower <= sharp <= upper; it collapses
    to the sharp value where the one-dimensional limit theorem applies.
    ``equivalence_only`` marks reports derived through density equivalence
    rather than an exact density match (logistic case).
    """

    kind: str
    kappa: float | None
    theta_star_upper: float
    theta_star_lower: float
    zeta_star_upper: float
    zeta_star_lower: float
    nu_star: float
    predicted_sharp_constant: float
    lower_constant: float
    upper_constant: float
    equivalence_only: bool = False


# ---------------------------------------------------------------------------
# norm-law engines
# ---------------------------------------------------------------------------


def _sphere_area(d):
    """Surface measure of the unit sphere in R^d (equals 2 for d = 1)."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


class _RadialGammaEngine:
    """Law of |X| with density proportional to rho^(m-1) exp(-theta rho^kappa).

    Substituting t = theta * rho^kappa turns every integral into an
    (incomplete) gamma function with shape parameter (m + r) / kappa.
    """

    def __init__(self, m, theta, kappa):
        self.m = float(m)
        self.theta = float(theta)
        self.kappa = float(kappa)
        self.shape = self.m / self.kappa

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        return special.gammaincc(self.shape, self.theta * np.power(x, self.kappa))

    def gen_survival(self, r, x):
        x = np.asarray(x, dtype=float)
        shape_r = (self.m + r) / self.kappa
        scale = math.exp(special.gammaln(shape_r) - special.gammaln(self.shape))
        scale *= self.theta ** (-r / self.kappa)
        return scale * special.gammaincc(shape_r, self.theta * np.power(x, self.kappa))

    def abs_moment(self, r):
        return float(self.gen_survival(r, 0.0))

    def inverse_survival(self, q):
        q = np.asarray(q, dtype=float)
        return np.power(special.gammainccinv(self.shape, q) / self.theta, 1.0 / self.kappa)

    def sample_radius(self, rng, count):
        t = rng.gamma(self.shape, size=count)
        return np.power(t / self.theta, 1.0 / self.kappa)

    def radial_pdf_norm(self):
        """Constant K with |X|-density K * rho^(m-1) exp(-theta rho^kappa)."""
        return self.kappa * self.theta ** self.shape / math.gamma(self.shape)


class _LogPolynomialEngine:
    """Law of |X| with density proportional to (log rho)^beta rho^(-(s+1)) on rho > 1.

    Here s = c - d > 0.  In u = log(rho) every integral is an incomplete
    gamma function with shape beta + 1, which also yields exact inverse-CDF
    sampling through ``gammaincinv``.
    """

    def __init__(self, beta, c, d):
        self.beta = float(beta)
        self.c = float(c)
        self.d = int(d)
        self.s = self.c - self.d

    def _tail(self, rate, x):
        # integral_x^inf (log rho)^beta rho^(-(rate+1)) drho, normalized so x <= 1 gives 1
        x = np.asarray(x, dtype=float)
        u = np.log(np.maximum(x, 1.0))
        return special.gammaincc(self.beta + 1.0, rate * u)

    def survival(self, x):
        return self._tail(self.s, x)

    def gen_survival(self, r, x):
        if self.s - r <= 0:
            raise MomentUnavailable(
                f"moment of order {r} diverges for log_polynomial(c={self.c}, d={self.d})")
        scale = (self.s / (self.s - r)) ** (self.beta + 1.0)
        return scale * self._tail(self.s - r, x)

    def abs_moment(self, r):
        return float(self.gen_survival(r, 0.0))

    def inverse_survival(self, q):
        q = np.asarray(q, dtype=float)
        return np.exp(special.gammainccinv(self.beta + 1.0, q) / self.s)

    def sample_radius(self, rng, count):
        u = rng.random(count)
        return np.exp(special.gammaincinv(self.beta + 1.0, u) / self.s)

    def radial_pdf_norm(self):
        return self.s ** (self.beta + 1.0) / math.gamma(self.beta + 1.0)


@lru_cache(maxsize=None)
def _engine(spec: DistributionSpec):
    """Norm-law engine for |X|, cached per spec."""
    fam = spec.family
    if fam == "exponential":
        return _RadialGammaEngine(1.0, spec.lambda_, 1.0)
    if fam in ("gamma", "double_gamma"):
        return _RadialGammaEngine(spec.a, spec.lambda_, 1.0)
    if fam == "weibull":
        return _RadialGammaEngine(spec.kappa, 1.0, spec.kappa)
    if fam == "exponential_power":
        return _RadialGammaEngine(spec.c + spec.dimension, spec.theta, spec.kappa)
    if fam == "log_polynomial":
        return _LogPolynomialEngine(spec.beta, spec.c, spec.dimension)
    return None


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------


def _norms(spec, x):
    """Validate shape, return (|x| array, scalar flag)."""
    arr = np.asarray(x, dtype=float)
    d = spec.dimension
    if d == 1:
        return np.abs(arr), arr.ndim == 0
    if arr.ndim == 1:
        if arr.shape[0] != d:
            raise DimensionMismatch(f"expected a point in R^{d}, got shape {arr.shape}")
        return np.linalg.norm(arr), True
    if arr.ndim == 2 and arr.shape[1] == d:
        return np.linalg.norm(arr, axis=1), False
    raise DimensionMismatch(f"expected points in R^{d}, got shape {arr.shape}")


def pdf(spec: DistributionSpec, x):
    """Density f(x) at a point (or array of points) in R^d."""
    fam = spec.family
    if fam == "uniform":
        arr = np.asarray(x, dtype=float)
        out = np.where((arr >= spec.a) & (arr <= spec.b), 1.0 / (spec.b - spec.a), 0.0)
        return float(out) if arr.ndim == 0 else out

    if fam == "logistic":
        arr = np.asarray(x, dtype=float)
        e = np.exp(-np.abs(arr))
        out = e / (1.0 + e) ** 2
        return float(out) if arr.ndim == 0 else out

    if fam == "pareto":
        arr = np.asarray(x, dtype=float)
        g = spec.gamma
        out = np.where(arr > 1.0, g * np.power(np.maximum(arr, 1.0), -(g + 1.0)), 0.0)
        return float(out) if arr.ndim == 0 else out

    rho, scalar = _norms(spec, x)
    eng = _engine(spec)
    d = spec.dimension
    if fam in ("exponential", "gamma", "weibull"):
        arr = np.asarray(x, dtype=float)
        k = eng.radial_pdf_norm()
        with np.errstate(divide="ignore", invalid="ignore"):
            val = k * np.power(rho, eng.m - 1.0) * np.exp(-eng.theta * np.power(rho, eng.kappa))
        out = np.where(arr >= 0, val, 0.0)
        return float(out) if scalar else out
    if fam == "double_gamma" or fam == "exponential_power":
        k = eng.radial_pdf_norm() / _sphere_area(d)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = k * np.power(rho, eng.m - d) * np.exp(-eng.theta * np.power(rho, eng.kappa))
        out = np.where(rho > 0, out, k if eng.m == d else (np.inf if eng.m < d else 0.0))
        return float(out) if scalar else out
    if fam == "log_polynomial":
        k = eng.radial_pdf_norm() / _sphere_area(d)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = k * np.power(np.log(np.maximum(rho, 1.0)), spec.beta) \
                * np.power(np.maximum(rho, 1.0), -spec.c)
        out = np.where(rho > 1.0, val, 0.0)
        return float(out) if scalar else out
    raise UnsupportedFamily(fam)


# ---------------------------------------------------------------------------
# survival functions
# ---------------------------------------------------------------------------


def survival(spec: DistributionSpec, x):
    """P(|X| > x) for x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("survival is defined for x >= 0")
    fam = spec.family
    if fam == "uniform":
        inner = np.clip(np.minimum(spec.b, arr) - np.maximum(spec.a, -arr), 0.0, None)
        out = 1.0 - inner / (spec.b - spec.a)
    elif fam == "pareto":
        out = np.power(np.maximum(arr, 1.0), -spec.gamma)
    elif fam == "logistic":
        out = 2.0 * special.expit(-arr)
    else:
        out = _engine(spec).survival(arr)
    return float(out) if arr.ndim == 0 else out


def _logistic_gen_survival(r, x):
    def integrand(u):
        e = math.exp(-u)
        return u ** r * e / (1.0 + e) ** 2

    val, _ = integrate.quad(integrand, x, np.inf, epsrel=1e-12, epsabs=0, limit=200)
    return 2.0 * val


def generalized_survival(spec: DistributionSpec, r, x):
    """E[|X|^r 1{|X| > x}] for r > 0, x >= 0."""
    r = float(r)
    if r <= 0:
        raise ValueError("order r must be positive")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("generalized survival is defined for x >= 0")
    fam = spec.family
    if fam == "uniform":
        def signed_power(t):
            return np.sign(t) * np.power(np.abs(t), r + 1.0) / (r + 1.0)

        total = signed_power(spec.b) - signed_power(spec.a)
        lo = np.maximum(spec.a, -arr)
        hi = np.minimum(spec.b, arr)
        inner = np.where(hi > lo, signed_power(hi) - signed_power(lo), 0.0)
        out = (total - inner) / (spec.b - spec.a)
    elif fam == "pareto":
        g = spec.gamma
        if g <= r:
            raise MomentUnavailable(f"pareto(gamma={g}) has no moment of order {r}")
        out = g / (g - r) * np.power(np.maximum(arr, 1.0), r - g)
    elif fam == "logistic":
        if arr.ndim == 0:
            out = np.asarray(_logistic_gen_survival(r, float(arr)))
        else:
            out = np.array([_logistic_gen_survival(r, float(t)) for t in arr])
    else:
        out = _engine(spec).gen_survival(r, arr)
    return float(out) if arr.ndim == 0 else out


def abs_moment(spec: DistributionSpec, r):
    """E|X|^r."""
    return float(generalized_survival(spec, r, 0.0))


def inverse_survival(spec: DistributionSpec, q):
    """x >= 0 with P(|X| > x) = q, for q in (0, 1]."""
    arr = np.asarray(q, dtype=float)
    if np.any((arr <= 0) | (arr > 1)):
        raise ValueError("q must lie in (0, 1]")
    fam = spec.family
    if fam == "pareto":
        out = np.power(arr, -1.0 / spec.gamma)
    elif fam == "logistic":
        out = np.log(2.0 / arr - 1.0)
    elif fam == "uniform":
        def solve_one(qq):
            if qq >= 1.0:
                return 0.0
            f = lambda t: survival(spec, t) - qq
            hi = max(abs(spec.a), abs(spec.b))
            return optimize.brentq(f, 0.0, hi, xtol=1e-14)

        out = np.vectorize(solve_one)(arr)
    else:
        out = _engine(spec).inverse_survival(arr)
    return float(out) if arr.ndim == 0 else out


def quantile_1d(spec: DistributionSpec, p):
    """Quantile of X itself (d = 1 only), by inverting the signed CDF."""
    if spec.dimension != 1:
        raise DimensionMismatch("quantile_1d applies to one-dimensional specs")
    arr = np.asarray(p, dtype=float)
    if np.any((arr <= 0) | (arr >= 1)):
        raise ValueError("p must lie in (0, 1)")
    fam = spec.family
    if fam == "uniform":
        out = spec.a + (spec.b - spec.a) * arr
    elif fam in _ONE_SIDED:
        out = inverse_survival(spec, 1.0 - arr)
    else:
        # symmetric two-sided law: fold through |X|
        out = np.where(
            arr >= 0.5,
            inverse_survival(spec, np.minimum(2.0 * (1.0 - arr), 1.0)),
            -inverse_survival(spec, np.minimum(2.0 * arr, 1.0)),
        )
    return float(out) if arr.ndim == 0 else out


def support_interval(spec: DistributionSpec):
    """Closed convex hull of the support, as (lo, hi), for d = 1 specs."""
    if spec.dimension != 1:
        raise DimensionMismatch("support_interval applies to one-dimensional specs")
    fam = spec.family
    if fam == "uniform":
        return (spec.a, spec.b)
    if fam == "pareto":
        return (1.0, math.inf)
    if fam in _ONE_SIDED:
        return (0.0, math.inf)
    return (-math.inf, math.inf)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def derive_seed(seed, index):
    """Stable child seed for parallel or repeated draws.

    Mixes the base seed with the task index through SeedSequence hashing so
    independent tasks get independent streams.
    """
    return int(np.random.SeedSequence(entropy=(int(seed), int(index))).generate_state(1)[0])


def sample(spec: DistributionSpec, seed, count):
    """Deterministic sample of ``count`` points; shape (count,) when d = 1.

    Radial families draw the radius first (generalized-gamma or exact
    inverse-CDF transform), then an independent uniform direction.
    """
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(int(seed))
    fam = spec.family
    d = spec.dimension
    if fam == "uniform":
        return rng.uniform(spec.a, spec.b, size=count)
    if fam == "logistic":
        return rng.logistic(size=count)
    if fam == "pareto":
        return np.power(rng.random(count), -1.0 / spec.gamma)
    eng = _engine(spec)
    radius = eng.sample_radius(rng, count)
    if fam in _ONE_SIDED:
        return radius
    if d == 1:
        sign = rng.integers(0, 2, size=count) * 2.0 - 1.0
        return radius * sign
    direction = rng.standard_normal((count, d))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    return radius[:, None] * direction


# ---------------------------------------------------------------------------
# tail indices
# ---------------------------------------------------------------------------


def _exponential_tail_report(r, d, theta, kappa, equivalence_only=False):
    sharp = ((r + d) / (d * theta)) ** (1.0 / kappa)
    lower = sharp
    upper = sharp if (d == 1 and r >= 1.0) else 2.0 * sharp
    return TailReport(
        kind="exponential",
        kappa=kappa,
        theta_star_upper=theta,
        theta_star_lower=theta,
        zeta_star_upper=math.inf,
        zeta_star_lower=math.inf,
        nu_star=float(d),
        predicted_sharp_constant=sharp,
        lower_constant=lower,
        upper_constant=upper,
        equivalence_only=equivalence_only,
    )


def _polynomial_tail_report(r, d, c):
    zeta = c - d
    nu = d * (1.0 - (r + d) / c)
    rate = (r + d) / (d * (c - r - d))
    return TailReport(
        kind="polynomial",
        kappa=None,
        theta_star_upper=0.0,
        theta_star_lower=0.0,
        zeta_star_upper=zeta,
        zeta_star_lower=zeta,
        nu_star=nu,
        predicted_sharp_constant=rate,
        lower_constant=rate,
        upper_constant=rate,
    )


def tail_indices(spec: DistributionSpec, r) -> TailReport:
    """Tail exponents and the predicted maximal-radius growth law.

    Exponential-type tails report the conjectured sharp constant K with
    rho_n ~ K (log n)^(1/kappa) plus the proven bracket; polynomial tails
    report the exact limit of log(rho_n)/log(n).
    """
    r = float(r)
    if r <= 0:
        raise ValueError("order r must be positive")
    fam = spec.family
    d = spec.dimension
    if fam == "uniform":
        raise BoundedSupport("tail indices require unbounded support")
    if fam == "exponential":
        return _exponential_tail_report(r, d, spec.lambda_, 1.0)
    if fam in ("gamma", "double_gamma"):
        return _exponential_tail_report(r, d, spec.lambda_, 1.0)
    if fam == "weibull":
        return _exponential_tail_report(r, d, 1.0, spec.kappa)
    if fam == "logistic":
        return _exponential_tail_report(r, d, 1.0, 1.0, equivalence_only=True)
    if fam == "exponential_power":
        return _exponential_tail_report(r, d, spec.theta, spec.kappa)
    if fam == "pareto":
        if spec.gamma <= r:
            raise MomentUnavailable(f"pareto(gamma={spec.gamma}) has no moment of order {r}")
        return _polynomial_tail_report(r, 1, spec.gamma + 1.0)
    if fam == "log_polynomial":
        if spec.c <= r + d:
            raise MomentUnavailable(
                f"log_polynomial(c={spec.c}, d={d}) has no moment of order {r}")
        return _polynomial_tail_report(r, d, spec.c)
    raise UnsupportedFamily(fam)


# ---------------------------------------------------------------------------
# serialization (shared JSON schema with the CLI)
# ---------------------------------------------------------------------------

_JSON_FIELDS = {
    "uniform": ("a", "b"),
    "exponential": ("lambda",),
    "gamma": ("a", "lambda"),
    "double_gamma": ("a", "lambda"),
    "weibull": ("kappa",),
    "pareto": ("gamma",),
    "logistic": (),
    "exponential_power": ("c", "theta", "kappa"),
    "log_polynomial": ("beta", "c"),
}

_ATTR_FOR_FIELD = {"lambda": "lambda_"}


def spec_to_dict(spec: DistributionSpec) -> dict:
    out = {"family": spec.family}
    for field in _JSON_FIELDS[spec.family]:
        out[field] = getattr(spec, _ATTR_FOR_FIELD.get(field, field))
    out["dimension"] = spec.dimension
    return out


def spec_from_dict(data: dict) -> DistributionSpec:
    data = dict(data)
    family = data.pop("family", None)
    if family is None:
        raise ValueError("spec JSON requires a 'family' field")
    dimension = int(data.pop("dimension", 1))
    if family == "normal":
        if data:
            raise ValueError(f"unexpected fields for normal: {sorted(data)}")
        return DistributionSpec.normal(dimension)
    if family not in _JSON_FIELDS:
        raise UnsupportedFamily(f"unknown family {family!r}")
    expected = _JSON_FIELDS[family]
    unknown = set(data) - set(expected)
    if unknown:
        raise ValueError(f"unexpected fields for {family}: {sorted(unknown)}")
    missing = set(expected) - set(data)
    if missing:
        raise ValueError(f"missing fields for {family}: {sorted(missing)}")
    kwargs = {_ATTR_FOR_FIELD.get(k, k): float(v) for k, v in data.items()}
    return DistributionSpec(family, dimension=dimension, **kwargs)


def spec_to_json(spec: DistributionSpec) -> str:
    return json.dumps(spec_to_dict(spec))


def spec_from_json(text: str) -> DistributionSpec:
    return spec_from_dict(json.loads(text))
