"""Special functions, closed-form densities, and the d=1 quadrature engine.

Densities are always taken with respect to the reference measure
mu(dx) = |x|^(-(d+1)/2) prod dx_ij on the positive definite cone, which at
d=1 reduces to dx/x on the positive half line. All gamma-type quantities are
computed in log space.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, interpolate
from scipy import special as sp

from . import matcore
from .errors import DomainError, QuadratureNoConvergence

# Window for log-substituted quadrature on (0, inf). Integrands handled here
# decay at least like x^(+-1/2) in linear space, so the truncation error at
# exp(+-60) is below 1e-13 of the total mass.
_LOG_LO = -60.0
_LOG_HI = 60.0


@dataclass(frozen=True)
class ModelParams:
    """The triple (d, alpha, beta)."""

    dim: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dim must be a positive integer, got {self.dim}")

    @property
    def half_bound(self):
        return (self.dim - 1) / 2.0

    def require_sampling(self):
        """alpha, beta > (d-1)/2, needed by every exact sampler."""
        if not (self.alpha > self.half_bound and self.beta > self.half_bound):
            raise DomainError(
                f"need alpha, beta > (d-1)/2 = {self.half_bound}, "
                f"got alpha={self.alpha}, beta={self.beta}"
            )
        return self

    def require_contracting(self):
        """beta - alpha > (d-1)/2, the regime where the series limit exists."""
        self.require_sampling()
        if not (self.beta - self.alpha > self.half_bound):
            raise DomainError(
                f"need beta - alpha > (d-1)/2 = {self.half_bound}, "
                f"got beta - alpha = {self.beta - self.alpha}"
            )
        return self


class Law(str, enum.Enum):
    WISHART = "wishart"
    INV_WISHART = "invwishart"
    BETA1 = "beta1"
    INV_BETA1 = "invbeta1"
    BETA2 = "beta2"


def digamma(x):
    """Logarithmic derivative of the gamma function, x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("digamma requires a positive argument")
    out = sp.digamma(x)
    return float(out) if out.ndim == 0 else out


def log_multivariate_gamma(d, a):
    """log Gamma_d(a) = d(d-1)/4 log(pi) + sum_k log Gamma(a - (k-1)/2)."""
    if not a > (d - 1) / 2.0:
        raise DomainError(f"multivariate gamma needs a > (d-1)/2, got a={a}, d={d}")
    ks = np.arange(d)
    return d * (d - 1) / 4.0 * math.log(math.pi) + float(np.sum(sp.gammaln(a - ks / 2.0)))


def multivariate_gamma(d, a):
    return math.exp(log_multivariate_gamma(d, a))


def log_multivariate_beta(d, a, b):
    return (
        log_multivariate_gamma(d, a)
        + log_multivariate_gamma(d, b)
        - log_multivariate_gamma(d, a + b)
    )


def multivariate_beta(d, a, b):
    return math.exp(log_multivariate_beta(d, a, b))


def density_wrt_mu(law, p: ModelParams, x):
    """Density of the named law with respect to mu, evaluated at x.

    Supported laws: wishart, invwishart, beta1, beta2. The beta1 density is
    zero outside its support, where I - x stops being positive definite.
    """
    law = Law(law)
    p.require_sampling()
    x = np.asarray(x, dtype=float)
    d = p.dim
    if law is Law.WISHART:
        logp = p.alpha * matcore.logdet(x) - matcore.trace(x) - log_multivariate_gamma(d, p.alpha)
        return np.exp(logp)
    if law is Law.INV_WISHART:
        logp = (
            -p.beta * matcore.logdet(x)
            - matcore.trace(matcore.invert(x))
            - log_multivariate_gamma(d, p.beta)
        )
        return np.exp(logp)
    if law is Law.BETA1:
        eye = np.eye(d)
        if not matcore.is_posdef(eye - x):
            return 0.0
        logp = (
            p.alpha * matcore.logdet(x)
            + (p.beta - (d + 1) / 2.0) * matcore.logdet(eye - x)
            - log_multivariate_beta(d, p.alpha, p.beta)
        )
        return np.exp(logp)
    if law is Law.BETA2:
        logp = (
            p.alpha * matcore.logdet(x)
            - (p.alpha + p.beta) * matcore.logdet(np.eye(d) + x)
            - log_multivariate_beta(d, p.alpha, p.beta)
        )
        return np.exp(logp)
    raise DomainError(f"no closed-form density for law {law.value}")


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    transform: str = "log"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


DEFAULT_QUAD = QuadratureSpec()


def integrate_mu_d1(fn, spec=DEFAULT_QUAD, lo=None, hi=None):
    """Integrate fn against dx/x over (lo, hi) in (0, inf).

    Uses adaptive quadrature after the substitution x = e^t, which makes the
    integrands treated here smooth and unimodal.
    """
    t_lo = _LOG_LO if lo is None else max(_LOG_LO, math.log(lo))
    t_hi = _LOG_HI if hi is None else min(_LOG_HI, math.log(hi))
    if t_hi <= t_lo:
        return 0.0
    val, err, info = integrate.quad(
        lambda t: fn(math.exp(t)),
        t_lo,
        t_hi,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )[:3]
    if err > 10.0 * max(spec.abs_tol, spec.rel_tol * abs(val)):
        raise QuadratureNoConvergence(
            f"achieved error {err:.3e} for value {val:.6e} under spec {spec}"
        )
    return val


def phi_d1(p: ModelParams, s, spec=DEFAULT_QUAD):
    """phi(s) = int_0^inf x^(alpha-beta) (1+sx)^(-alpha) e^(-1/x) dx/x, s > 0."""
    if p.dim != 1:
        raise DomainError("phi is evaluated at d=1 only")
    if p.beta <= 0:
        raise DomainError("phi requires beta > 0")
    if s <= 0:
        raise DomainError("phi requires s > 0")
    a, b = p.alpha, p.beta
    if s <= 1.0:
        def integrand(x):
            return math.exp((a - b) * math.log(x) - a * math.log1p(s * x) - 1.0 / x)

        return integrate_mu_d1(integrand, spec)
    # For large s the value decays like s^(-alpha); pulling that factor out
    # analytically keeps the integrand O(1), otherwise the absolute
    # tolerance is met long before any relative accuracy is reached.
    c = 1.0 / s

    def rescaled(x):
        return math.exp((a - b) * math.log(x) - a * math.log(x + c) - 1.0 / x)

    return math.exp(-a * math.log(s)) * integrate_mu_d1(rescaled, spec)


class QuadratureCdf:
    """CDF built by per-segment quadrature of a density against dx/x.

    The density is integrated over consecutive cells of a log-spaced grid
    with adaptive quadrature; the cumulative values are joined by a monotone
    interpolant in log x. ``total_mass`` records the full integral before
    normalization so callers can assert it is a probability density.
    """

    def __init__(self, density, x_lo, x_hi, n_grid=400, spec=None):
        spec = spec or QuadratureSpec(abs_tol=1e-11, rel_tol=1e-9)
        ts = np.linspace(math.log(x_lo), math.log(x_hi), n_grid)
        head = integrate_mu_d1(density, spec, hi=math.exp(ts[0]))
        segs = [
            integrate.quad(
                lambda t: density(math.exp(t)),
                ts[i],
                ts[i + 1],
                epsabs=spec.abs_tol,
                epsrel=spec.rel_tol,
                limit=spec.max_subdivisions,
            )[0]
            for i in range(len(ts) - 1)
        ]
        tail = integrate_mu_d1(density, spec, lo=math.exp(ts[-1]))
        cum = head + np.concatenate([[0.0], np.cumsum(segs)])
        self.total_mass = float(cum[-1] + tail)
        self.grid = np.exp(ts)
        self._ts = ts
        self._interp = interpolate.PchipInterpolator(ts, cum / self.total_mass)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        t = np.log(np.clip(x, 1e-300, None))
        vals = np.where(
            t <= self._ts[0],
            0.0,
            np.where(t >= self._ts[-1], 1.0, self._interp(np.clip(t, self._ts[0], self._ts[-1]))),
        )
        return np.clip(vals, 0.0, 1.0)


@dataclass
class KernelBundleD1:
    """Evaluator bundle for the d=1 transition kernels and measures.

    All densities are with respect to mu(dx) = dx/x in the second argument.
    The point-mass component of the two-variable kernel is exposed through
    its location map rather than a density.
    """

    params: ModelParams
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if self.params.dim != 1:
            raise DomainError("kernel bundle is available at d=1 only")
        self.params.require_sampling()
        self._log_b = log_multivariate_beta(1, self.params.alpha, self.params.beta)
        self._log_gamma_beta = float(sp.gammaln(self.params.beta))

    def p_density(self, r, r_new):
        a, b = self.params.alpha, self.params.beta
        ratio = np.asarray(r_new, dtype=float) / r
        return np.exp(a * np.log(ratio) - (a + b) * np.log1p(ratio) - self._log_b)

    def q_density(self, s, s_new):
        return self.p_density(s, s_new) * np.exp(-np.asarray(s_new, dtype=float))

    def k_density(self, s, a_var):
        al, be = self.params.alpha, self.params.beta
        a_var = np.asarray(a_var, dtype=float)
        return np.exp((al - be) * np.log(a_var) - al * np.log1p(s * a_var) - 1.0 / a_var)

    def k_point_mass_r(self, s, a_var):
        # a (s^-1 + a)^-1 a at d=1.
        a_var = np.asarray(a_var, dtype=float)
        return a_var * a_var * s / (1.0 + a_var * s)

    def phi(self, s):
        return phi_d1(self.params, s, self.spec)

    def qbar_density(self, s, s_new, phi_s=None, phi_s_new=None):
        phi_s = self.phi(s) if phi_s is None else phi_s
        phi_s_new = self.phi(s_new) if phi_s_new is None else phi_s_new
        return (phi_s_new / phi_s) * self.q_density(s, s_new)

    def eta_density(self, s_new, phi_s_new=None):
        phi_s_new = self.phi(s_new) if phi_s_new is None else phi_s_new
        a = self.params.alpha
        s_new = np.asarray(s_new, dtype=float)
        return np.exp(
            np.log(phi_s_new) + a * np.log(s_new) - s_new - self._log_b - self._log_gamma_beta
        )

    def lambda_a_density(self, a_var):
        # Initial measure: a is inverse Wishart of parameter beta, r = a.
        be = self.params.beta
        a_var = np.asarray(a_var, dtype=float)
        return np.exp(-be * np.log(a_var) - 1.0 / a_var - self._log_gamma_beta)


def kernel_densities_d1(p: ModelParams, spec=None):
    return KernelBundleD1(p, spec or QuadratureSpec())
