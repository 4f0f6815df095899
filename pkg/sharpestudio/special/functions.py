"""
Distribution Functions

Self-contained implementations of the cumulative distribution functions and quantiles
used by the significance tests: normal, Student-t, Fisher-Snedecor and Beta.

One regularized incomplete beta kernel (continued fraction, symmetry split at
x = (a+1)/(a+b+2)) powers the t, F and Beta families. The normal distribution goes
through the complementary error function, itself computed from the regularized
incomplete gamma Q(1/2, x^2). Quantiles are root finders against the forward CDFs,
so round trips hold by construction.

Every function here is pure and safe to call from any thread.
"""

import logging
import math
from typing import TypeAlias

from sharpestudio.core.config import get_settings
from sharpestudio.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

Probability: TypeAlias = float
DegreesOfFreedom: TypeAlias = float

LN_SQRT_PI = 0.57236494292470008707  # ln(sqrt(pi)) = ln Gamma(1/2)
LN_SQRT_2PI = 0.91893853320467274178  # ln(sqrt(2 pi))
SQRT_2 = 1.41421356237309504880
SQRT_2PI = 2.50662827463100050242

FPMIN = 1e-300
CF_EPS = 1e-15
ROOT_EPS = 4.0 * 2.220446049250313e-16

# Stirling series coefficients B_2k / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
# The Stirling series is used from here up; below it ln Gamma is reduced onto [0.5, 2.5)
_STIRLING_MIN = 15.0

EULER_GAMMA = 0.57721566490153286061
# Terms of the zeta series for ln Gamma(1 + z), enough for |z| <= 1/2
_ZETA_TERMS = 60

# Abramowitz & Stegun 26.2.23 rational approximation (|error| < 4.5e-4), refined by Halley steps
_AS_C = (2.515517, 0.802853, 0.010328)
_AS_D = (1.432788, 0.189269, 0.001308)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def _max_iterations() -> int:
    return get_settings().max_iterations


# ---------------------------------------------------------------------------
# Gamma family
# ---------------------------------------------------------------------------


def _zeta(k: int) -> float:
    """Riemann zeta at an integer k >= 2 (exact constants below 6, Euler-Maclaurin above)."""
    exact = {2: math.pi**2 / 6.0, 3: 1.2020569031595942854, 4: math.pi**4 / 90.0, 5: 1.0369277551433699263}
    if k in exact:
        return exact[k]
    cutoff = 20.0
    head = math.fsum(n**-k for n in range(1, int(cutoff)))
    tail = (
        cutoff ** (1 - k) / (k - 1)
        + 0.5 * cutoff**-k
        + k * cutoff ** (-k - 1) / 12.0
        - k * (k + 1) * (k + 2) * cutoff ** (-k - 3) / 720.0
    )
    return head + tail


# (-1)^k zeta(k) / k, coefficients of ln Gamma(1 + z) beyond the linear term
_LOG_GAMMA_SERIES = tuple((-1) ** k * _zeta(k) / k for k in range(2, _ZETA_TERMS + 2))


def _log_gamma_one_plus(z: float) -> float:
    """ln Gamma(1 + z) = -gamma z + sum_k (-1)^k zeta(k) z^k / k for |z| <= 1/2."""
    total = 0.0
    for coefficient in reversed(_LOG_GAMMA_SERIES):
        total = (total + coefficient) * z
    return (total - EULER_GAMMA) * z


def _stirling_correction(x: float) -> float:
    """Tail of the Stirling series, sum_k c_k / x^(2k-1), for x >= _STIRLING_MIN."""
    inv = 1.0 / x
    inv2 = inv * inv
    power = inv
    total = 0.0
    for coefficient in _STIRLING:
        total += coefficient * power
        power *= inv2
    return total


def log_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function.

    Above 15 the Stirling series with eight Bernoulli terms keeps the truncation error
    below 1e-20. Below 15 the argument is reduced onto [0.5, 2.5) by the recurrence
    Gamma(x + 1) = x Gamma(x) and evaluated by the Taylor series of ln Gamma(1 + z) in
    zeta values, which keeps the relative error small around the zeros at 1 and 2.

    Args:
        x: Positive argument

    Returns:
        ln Gamma(x)

    Raises:
        DomainError: If x is not a finite positive number
    """
    _require(math.isfinite(x) and x > 0.0, f"log_gamma requires x > 0, got {x}")

    if x in (1.0, 2.0):
        return 0.0
    if x == 0.5:
        return LN_SQRT_PI
    if x >= _STIRLING_MIN:
        return (x - 0.5) * math.log(x) - x + LN_SQRT_2PI + _stirling_correction(x)
    if x < 0.5:
        return _log_gamma_one_plus(x) - math.log(x)
    if x < 1.5:
        return _log_gamma_one_plus(x - 1.0)

    # x - 1 is exact, so the only rounding is in the product
    product = 1.0
    while x >= 2.5:
        x -= 1.0
        product *= x
    return math.log(product) + math.log1p(x - 2.0) + _log_gamma_one_plus(x - 2.0)


def _log_gamma_ratio(a: float, b: float) -> float:
    """
    ln Gamma(a) - ln Gamma(a + b) without cancelling two large logarithms.

    For a >= 15 the Stirling forms are subtracted analytically and the leading
    terms are rewritten with log1p.
    """
    if a < _STIRLING_MIN:
        return log_gamma(a) - log_gamma(a + b)
    s = a + b
    return (
        -(a - 0.5) * math.log1p(b / a)
        - b * math.log(s)
        + b
        + _stirling_correction(a)
        - _stirling_correction(s)
    )


def log_beta(a: float, b: float) -> float:
    """
    Natural logarithm of the complete beta function B(a, b).

    Args:
        a: First shape parameter (> 0)
        b: Second shape parameter (> 0)

    Returns:
        ln B(a, b)
    """
    _require(a > 0.0 and b > 0.0, f"log_beta requires a > 0 and b > 0, got a={a}, b={b}")
    large, small = (a, b) if a >= b else (b, a)
    return log_gamma(small) + _log_gamma_ratio(large, small)


def _gamma_series(a: float, x: float, log_gamma_a: float) -> float:
    """Lower regularized incomplete gamma P(a, x) by its power series."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_max_iterations()):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * CF_EPS:
            return total * math.exp(-x + a * math.log(x) - log_gamma_a)
    raise ConvergenceError(f"Incomplete gamma series did not converge for a={a}, x={x}")


def _gamma_continued_fraction(a: float, x: float, log_gamma_a: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) by the modified Lentz continued fraction."""
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _max_iterations() + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return math.exp(-x + a * math.log(x) - log_gamma_a) * h
    raise ConvergenceError(f"Incomplete gamma continued fraction did not converge for a={a}, x={x}")


def _gamma_tails(a: float, x: float) -> tuple[float, float]:
    """Return (P(a, x), Q(a, x)), computing the smaller one directly."""
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    lg = log_gamma(a)
    if x < a + 1.0:
        lower = _gamma_series(a, x, lg)
        return lower, 1.0 - lower
    upper = _gamma_continued_fraction(a, x, lg)
    return 1.0 - upper, upper


def reg_inc_gamma_lower(a: float, x: float) -> Probability:
    """
    Regularized lower incomplete gamma function P(a, x).

    Raises:
        DomainError: If a <= 0 or x < 0
    """
    _require(a > 0.0 and x >= 0.0, f"reg_inc_gamma_lower requires a > 0, x >= 0, got a={a}, x={x}")
    return _gamma_tails(a, x)[0]


def reg_inc_gamma_upper(a: float, x: float) -> Probability:
    """
    Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).

    Raises:
        DomainError: If a <= 0 or x < 0
    """
    _require(a > 0.0 and x >= 0.0, f"reg_inc_gamma_upper requires a > 0, x >= 0, got a={a}, x={x}")
    return _gamma_tails(a, x)[1]


def erfc(x: float) -> float:
    """
    Complementary error function, erfc(x) = Q(1/2, x^2) for x >= 0.

    Args:
        x: Any real number

    Returns:
        erfc(x) in [0, 2]
    """
    if math.isnan(x):
        raise DomainError("erfc is undefined for NaN")
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x == 0.0:
        return 1.0
    lower, upper = _gamma_tails(0.5, x * x)
    return upper if upper <= 0.5 else 1.0 - lower


# ---------------------------------------------------------------------------
# Normal distribution
# ---------------------------------------------------------------------------


def normal_pdf(z: float) -> float:
    """Standard normal density."""
    return math.exp(-0.5 * z * z) / SQRT_2PI


def normal_cdf(z: float) -> Probability:
    """
    Standard normal cumulative distribution function Phi(z).

    Args:
        z: Any real number

    Returns:
        Phi(z)
    """
    return 0.5 * erfc(-z / SQRT_2)


def normal_sf(z: float) -> Probability:
    """Standard normal upper tail 1 - Phi(z), computed without subtraction."""
    return 0.5 * erfc(z / SQRT_2)


def _normal_guess(p: float) -> float:
    """Rational approximation of the lower-tail quantile for 0 < p <= 0.5."""
    t = math.sqrt(-2.0 * math.log(p))
    c0, c1, c2 = _AS_C
    d1, d2, d3 = _AS_D
    return -(t - (c0 + c1 * t + c2 * t * t) / (1.0 + d1 * t + d2 * t * t + d3 * t * t * t))


def normal_inv(p: Probability) -> float:
    """
    Inverse of the standard normal CDF.

    A rational initial guess is refined by Halley steps against normal_cdf until the
    step falls below a few ulps. Near the root the iterate can flip between two adjacent
    floats; once a step stops shrinking the iterate with the smallest residual is returned.

    Args:
        p: Cumulative probability, 0 < p < 1

    Returns:
        x such that Phi(x) = p

    Raises:
        DomainError: If p is not strictly between 0 and 1
        ConvergenceError: If the refinement does not settle
    """
    _require(0.0 < p < 1.0, f"normal_inv requires 0 < p < 1, got {p}")
    if p == 0.5:
        return 0.0
    if p > 0.5:
        return -normal_inv(1.0 - p)

    x = _normal_guess(p)
    best_x, best_error = x, math.inf
    previous_step = math.inf
    for _ in range(50):
        error = normal_cdf(x) - p
        if abs(error) < best_error:
            best_x, best_error = x, abs(error)
        if error == 0.0:
            return x
        u = error * SQRT_2PI * math.exp(0.5 * x * x)
        step = u / (1.0 + 0.5 * x * u)
        if abs(step) >= abs(previous_step):
            return best_x
        x -= step
        if abs(step) <= ROOT_EPS * max(1.0, abs(x)):
            return x
        previous_step = step
    raise ConvergenceError(f"normal_inv did not converge for p={p}")


# ---------------------------------------------------------------------------
# Incomplete beta and the distributions built on it
# ---------------------------------------------------------------------------


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction of the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _max_iterations() + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ConvergenceError(
        f"Incomplete beta continued fraction did not converge for a={a}, b={b}, x={x} "
        f"within {_max_iterations()} iterations"
    )


def _beta_tails(a: float, b: float, x: float, y: float) -> tuple[float, float]:
    """
    Return (I_x(a, b), 1 - I_x(a, b)) with y = 1 - x supplied exactly by the caller.

    Whichever tail the continued fraction evaluates is returned at full relative
    precision; the other one is its complement.
    """
    if x <= 0.0:
        return 0.0, 1.0
    if y <= 0.0:
        return 1.0, 0.0

    log_front = a * math.log(x) + b * math.log(y) - log_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        lower = math.exp(log_front) * _beta_continued_fraction(a, b, x) / a
        return lower, 1.0 - lower
    upper = math.exp(log_front) * _beta_continued_fraction(b, a, y) / b
    return 1.0 - upper, upper


def reg_inc_beta(a: float, b: float, x: float) -> Probability:
    """
    Regularized incomplete beta function I_x(a, b).

    Args:
        a: First shape parameter (> 0)
        b: Second shape parameter (> 0)
        x: Integration limit in [0, 1]

    Returns:
        I_x(a, b)

    Raises:
        DomainError: On parameter violations
        ConvergenceError: If the continued fraction exceeds its iteration budget
    """
    _require(a > 0.0 and b > 0.0, f"reg_inc_beta requires a > 0 and b > 0, got a={a}, b={b}")
    _require(0.0 <= x <= 1.0, f"reg_inc_beta requires 0 <= x <= 1, got {x}")
    return _beta_tails(a, b, x, 1.0 - x)[0]


def beta_cdf(x: float, a: float, b: float, complement: float | None = None) -> Probability:
    """
    Beta distribution CDF, identical to reg_inc_beta(a, b, x).

    Args:
        x: Point in [0, 1]
        a: First shape parameter (> 0)
        b: Second shape parameter (> 0)
        complement: 1 - x computed exactly by the caller. Needed when x is within
            rounding of 1, where 1 - x itself carries no significant digits

    Raises:
        DomainError: On parameter violations
    """
    if complement is None:
        return reg_inc_beta(a, b, x)
    _require(a > 0.0 and b > 0.0, f"beta_cdf requires a > 0 and b > 0, got a={a}, b={b}")
    _require(0.0 <= x <= 1.0 and 0.0 <= complement <= 1.0, f"beta_cdf requires x and 1 - x in [0, 1], got {x}, {complement}")
    return _beta_tails(a, b, x, complement)[0]


def _check_dof(nu: float, name: str = "nu") -> None:
    _require(math.isfinite(nu) and nu > 0.0, f"degrees of freedom {name} must be > 0, got {nu}")


def _t_upper_tail(abs_x: float, nu: float) -> float:
    """P(T > |x|) for a central Student-t with nu degrees of freedom."""
    if abs_x == 0.0:
        return 0.5
    if math.isinf(abs_x):
        return 0.0
    x2 = abs_x * abs_x
    denominator = nu + x2
    lower, _ = _beta_tails(0.5 * nu, 0.5, nu / denominator, x2 / denominator)
    return 0.5 * lower


def t_pdf(x: float, nu: DegreesOfFreedom) -> float:
    """Central Student-t density."""
    _check_dof(nu)
    log_norm = -_log_gamma_ratio(0.5 * nu, 0.5) - 0.5 * math.log(nu * math.pi)
    return math.exp(log_norm - 0.5 * (nu + 1.0) * math.log1p(x * x / nu))


def t_cdf(x: float, nu: DegreesOfFreedom) -> Probability:
    """
    Central Student-t cumulative distribution function.

    Args:
        x: Any real number
        nu: Degrees of freedom (> 0, need not be an integer)

    Returns:
        P(T <= x)

    Raises:
        DomainError: If nu <= 0
    """
    _check_dof(nu)
    tail = _t_upper_tail(abs(x), nu)
    return 1.0 - tail if x > 0.0 else tail


def t_sf(x: float, nu: DegreesOfFreedom) -> Probability:
    """Student-t upper tail P(T > x), computed without subtraction in the far tail."""
    _check_dof(nu)
    tail = _t_upper_tail(abs(x), nu)
    return tail if x >= 0.0 else 1.0 - tail


def t_inv(p: Probability, nu: DegreesOfFreedom) -> float:
    """
    Inverse of the central Student-t CDF.

    The upper-tail equation P(T > u) = min(p, 1 - p) is solved for u > 0 by a
    bracketing search followed by Newton steps on the log tail, falling back to
    bisection whenever a step leaves the bracket.

    Args:
        p: Cumulative probability, 0 < p < 1
        nu: Degrees of freedom (> 0)

    Returns:
        x such that t_cdf(x, nu) = p

    Raises:
        DomainError: If p is outside (0, 1) or nu <= 0
        ConvergenceError: If the root finder exhausts its budget
    """
    _require(0.0 < p < 1.0, f"t_inv requires 0 < p < 1, got {p}")
    _check_dof(nu)
    if p == 0.5:
        return 0.0

    target = 1.0 - p if p > 0.5 else p
    u = _solve_t_tail(target, nu)
    return u if p > 0.5 else -u


def _solve_t_tail(target: float, nu: float) -> float:
    """Find u > 0 with P(T > u) = target for 0 < target < 0.5."""
    log_target = math.log(target)

    # Bracket [lo, hi] with tail(lo) >= target >= tail(hi)
    hi = max(1.0, -_normal_guess(target))
    while _t_upper_tail(hi, nu) > target:
        hi *= 2.0
        if math.isinf(hi):
            raise ConvergenceError(f"t_inv could not bracket tail probability {target} for nu={nu}")
    lo = 0.0

    u = hi if lo == 0.0 else 0.5 * (lo + hi)
    for _ in range(_max_iterations()):
        tail = _t_upper_tail(u, nu)
        if tail > target:
            lo = u
        else:
            hi = u

        density = t_pdf(u, nu)
        candidate = u + (math.log(tail) - log_target) * tail / density if tail > 0.0 and density > 0.0 else -1.0
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)

        if abs(candidate - u) <= ROOT_EPS * max(1.0, u) or hi - lo <= ROOT_EPS * max(1.0, hi):
            return candidate
        u = candidate

    raise ConvergenceError(f"t_inv did not converge for tail={target}, nu={nu}")


def f_cdf(x: float, d1: DegreesOfFreedom, d2: DegreesOfFreedom) -> Probability:
    """
    Fisher-Snedecor cumulative distribution function.

    Args:
        x: Non-negative statistic
        d1: Numerator degrees of freedom (> 0)
        d2: Denominator degrees of freedom (> 0)

    Returns:
        P(F <= x)

    Raises:
        DomainError: If x < 0 or a degree of freedom is not positive
    """
    return _f_tails(x, d1, d2)[0]


def f_sf(x: float, d1: DegreesOfFreedom, d2: DegreesOfFreedom) -> Probability:
    """Fisher-Snedecor upper tail P(F > x)."""
    return _f_tails(x, d1, d2)[1]


def _f_tails(x: float, d1: float, d2: float) -> tuple[float, float]:
    _require(x >= 0.0, f"f_cdf requires x >= 0, got {x}")
    _check_dof(d1, "d1")
    _check_dof(d2, "d2")
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    scaled = d1 * x
    denominator = scaled + d2
    return _beta_tails(0.5 * d1, 0.5 * d2, scaled / denominator, d2 / denominator)
