"""Closed-form envelopes that dominate the series evaluators everywhere.

Every envelope is assembled and stored in natural-log form because the
exponential factor exp(-log^2|z| / (4 l log q)) leaves the double range
already for moderate |log z|^2 / |log q|.  The linear value is reported too,
with math.inf standing in when exp would overflow.

The one-sided chain multiplies three pieces: the parameter constant
(-|a_1|,...,-|a_r|;q)_inf / (b_1,...,b_s;q)_inf, the sum identity
sum_k q^{kl}/(q;q)_k = 1/(q^l;q)_inf, and the real-k maximum of the
Gaussian-weighted term (q^{l(k-1)} |z|)^k.  The two-sided bound instead uses
the weighted-coefficient constant c = sum_k |a_k| q^{-|k|^(alpha+1)} and the
closed-form maximum of q^{|k|^(alpha+1)} |z - a|^k over all integers k, which
gives exp(beta |log|z - a||^gamma) with

    beta = alpha / ((alpha+1)^{1+1/alpha} log^{1/alpha}(1/q)),
    gamma = (alpha+1)/alpha.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidArgumentError, NonConvergentError
from .qcore import QBase, multishifted, pochhammer_infinite
from .series import ConfluentParams, PhiParams, phi_to_f

_POCH_TOL = 1e-16
_MAX_LOG = math.log(sys.float_info.max)
WEIGHTED_SUM_CAP = 100_000


def _as_linear(log_bound: float) -> float:
    if log_bound > _MAX_LOG:
        return math.inf
    return math.exp(log_bound)


@dataclass(frozen=True)
class EnvelopeResult:
    """An envelope value with its constant-factor breakdown.

    log_bound == log(constant_c) + prefactor_log + exponent_term holds by
    construction; ``bound`` is exp(log_bound) or math.inf when that
    overflows.
    """

    log_bound: float
    bound: float
    constant_c: float
    prefactor_log: float
    exponent_term: float


def _assemble(constant_c: float, prefactor_log: float, exponent_term: float) -> EnvelopeResult:
    log_bound = math.log(constant_c) + prefactor_log + exponent_term
    return EnvelopeResult(
        log_bound=log_bound,
        bound=_as_linear(log_bound),
        constant_c=constant_c,
        prefactor_log=prefactor_log,
        exponent_term=exponent_term,
    )


@dataclass(frozen=True)
class MeromorphicBoundParams:
    """Derived exponent data for the two-sided envelope.

    gamma = (alpha+1)/alpha > 1 and beta > 0 always; ``c_weighted`` stays
    unset until a coefficient stream supplies it.
    """

    alpha: float
    q: QBase
    beta: float
    gamma: float
    c_weighted: float | None = None


def _require_positive(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise InvalidArgumentError(f"{name} must be positive and finite, got {value!r}")
    return value


def constant_c(params: ConfluentParams) -> float:
    """Parameter constant (-|a_1|,...,-|a_r|;q)_inf / (b_1,...,b_s;q)_inf.

    Equals 1 for empty parameter lists and is >= 1 in general, since every
    numerator factor is >= 1 and every denominator factor is <= 1.
    """
    num = multishifted([-abs(a) for a in params.a_list], params.q, math.inf, tol=_POCH_TOL)
    den = multishifted(list(params.b_list), params.q, math.inf, tol=_POCH_TOL)
    return num.value / den.value


def term_peak(abs_z: float, l: float, q: QBase) -> float:
    """Log of the real-k maximum of (q^{l(k-1)} |z|)^k.

    The maximum of k log|z| + l k(k-1) log q over real k sits at
    k* = 1/2 - log|z| / (2 l log q) and evaluates to

        (1/2) log|z| - (l/4) log q - log^2|z| / (4 l log q),

    i.e. the log of (|z|^2 q^{-l})^{1/4} exp(-log^2|z| / (4 l log q)).
    """
    abs_z = _require_positive(abs_z, "abs_z")
    l = _require_positive(l, "l")
    lz = math.log(abs_z)
    lq = q.log_q
    return 0.5 * lz - 0.25 * l * lq - lz * lz / (4.0 * l * lq)


def envelope_entire(params: ConfluentParams, abs_z: float) -> EnvelopeResult:
    """Envelope of the Gaussian-weighted entire class on the circle |z| = abs_z.

    log bound = log(constant_c) - log((q^l;q)_inf) + term_peak(abs_z, l, q),
    valid for every nonzero z of that modulus.
    """
    abs_z = _require_positive(abs_z, "abs_z")
    c = constant_c(params)
    q = params.q
    ql_poch = pochhammer_infinite(q.q ** params.l, q, _POCH_TOL).value
    lz = math.log(abs_z)
    lq = q.log_q
    prefactor_log = -math.log(ql_poch) + 0.5 * lz - 0.25 * params.l * lq
    exponent_term = -lz * lz / (4.0 * params.l * lq)
    return _assemble(c, prefactor_log, exponent_term)


def envelope_phi(params: PhiParams, abs_z: float) -> EnvelopeResult:
    """Envelope of the confluent hypergeometric sum on the circle |z| = abs_z.

    Two independent routes are computed: composing envelope_entire with the
    argument rescaling from phi_to_f, and the direct closed form

        (|z|^2 q^{3(r-s-1)/2})^{1/4} exp(log^2[|z| q^{(r-s-1)/2}] / (2(r-s-1) log q))

    times the constant ratio.  They agree algebraically; a defensive check
    enforces it numerically and the direct form is returned.
    """
    direct, composed = envelope_phi_routes(params, abs_z)
    scale = max(1.0, abs(direct.log_bound))
    if abs(direct.log_bound - composed.log_bound) > 1e-8 * scale:
        raise NonConvergentError(
            "envelope routes disagree: "
            f"direct {direct.log_bound!r} vs composed {composed.log_bound!r}"
        )
    return direct


def envelope_phi_routes(params: PhiParams, abs_z: float) -> tuple[EnvelopeResult, EnvelopeResult]:
    """Both envelope routes for the confluent hypergeometric sum.

    Returns (direct closed form, composition through phi_to_f).
    """
    abs_z = _require_positive(abs_z, "abs_z")
    reduction = phi_to_f(params)
    composed = envelope_entire(reduction.params, abs_z * abs(reduction.scale))

    m = params.confluence_order
    l = m / 2.0
    q = params.q
    c = constant_c(reduction.params)
    ql_poch = pochhammer_infinite(q.q**l, q, _POCH_TOL).value
    lz = math.log(abs_z)
    lq = q.log_q
    prefactor_log = -math.log(ql_poch) + 0.5 * lz + (3.0 * (-m) / 8.0) * lq
    shifted = lz + (-m / 2.0) * lq
    exponent_term = shifted * shifted / (2.0 * (-m) * lq)
    direct = _assemble(c, prefactor_log, exponent_term)
    return direct, composed


def envelope_aq_gaussian(q: QBase, abs_z: float) -> EnvelopeResult:
    """Gaussian envelope (|z|/sqrt(q))^{1/2} exp(-log^2|z|/(4 log q)) / (q;q)_inf.

    This is the r = s = 0, l = 1 specialization of envelope_entire, assembled
    here from its own closed form so the two code paths stay independent.
    """
    abs_z = _require_positive(abs_z, "abs_z")
    poch = pochhammer_infinite(q.q, q, _POCH_TOL).value
    lz = math.log(abs_z)
    lq = q.log_q
    prefactor_log = -math.log(poch) + 0.5 * math.log(abs_z / math.sqrt(q.q))
    exponent_term = -lz * lz / (4.0 * lq)
    return _assemble(1.0, prefactor_log, exponent_term)


def envelope_aq_exponential(q: QBase, abs_z: float) -> EnvelopeResult:
    """Exponential envelope exp(q |z| / (1 - q)); valid at z = 0 as well."""
    abs_z = float(abs_z)
    if not (math.isfinite(abs_z) and abs_z >= 0.0):
        raise InvalidArgumentError(f"abs_z must be nonnegative and finite, got {abs_z!r}")
    exponent_term = q.q * abs_z / (1.0 - q.q)
    return _assemble(1.0, 0.0, exponent_term)


def meromorphic_bound_params(alpha: float, q: QBase) -> MeromorphicBoundParams:
    """Exponent data beta, gamma of the two-sided envelope for a given alpha."""
    alpha = _require_positive(alpha, "alpha")
    beta = alpha / ((alpha + 1.0) ** (1.0 + 1.0 / alpha) * q.log_inv_q ** (1.0 / alpha))
    gamma = (alpha + 1.0) / alpha
    return MeromorphicBoundParams(alpha=alpha, q=q, beta=beta, gamma=gamma)


def envelope_meromorphic(
    params: MeromorphicBoundParams, c_weighted: float, dist: float
) -> EnvelopeResult:
    """Two-sided envelope c_weighted exp(beta |log dist|^gamma) at |z - a| = dist."""
    c_weighted = _require_positive(c_weighted, "c_weighted")
    dist = _require_positive(dist, "dist")
    exponent_term = params.beta * abs(math.log(dist)) ** params.gamma
    return _assemble(c_weighted, 0.0, exponent_term)


def theta_weighted_constant(alpha: float, q: QBase, tol: float) -> float:
    """Weighted constant sum_{k in Z} q^{k^2 - |k|^(1+alpha)} for 0 < alpha < 1.

    The exponent k^2 - k^(1+alpha) vanishes at k = 1 and grows beyond, so the
    symmetric terms decrease monotonically and the sum is always >= 3.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not tol > 0.0:
        raise InvalidArgumentError(f"tol must be positive, got {tol!r}")
    qq = q.q
    total = 1.0
    for k in range(1, WEIGHTED_SUM_CAP + 1):
        term = qq ** (k * k - k ** (1.0 + alpha))
        total += 2.0 * term
        if term < tol:
            return total
    raise NonConvergentError(f"weighted constant did not settle within {WEIGHTED_SUM_CAP} terms")


def laurent_weighted_constant(
    coeff: Callable[[int], complex],
    alpha: float,
    q: QBase,
    tol: float = 1e-15,
    k_cap: int = WEIGHTED_SUM_CAP,
) -> float:
    """Weighted constant sum_k |coeff(k)| q^{-|k|^(alpha+1)} for a coefficient stream.

    The stream is a black box, so convergence cannot be proved here: the sum
    stops only after 8 consecutive sub-tol terms, raises NonConvergentError
    when 64 consecutive terms fail to decline or a weighted term overflows,
    and gives up at k_cap.
    """
    alpha = _require_positive(alpha, "alpha")
    if not tol > 0.0:
        raise InvalidArgumentError(f"tol must be positive, got {tol!r}")
    linv = q.log_inv_q
    total = abs(coeff(0))
    previous = math.inf
    grow_streak = 0
    below_streak = 0
    for k in range(1, k_cap + 1):
        mags = abs(coeff(k)) + abs(coeff(-k))
        if mags == 0.0:
            term = 0.0
        else:
            log_term = math.log(mags) + k ** (alpha + 1.0) * linv
            if log_term > _MAX_LOG:
                raise NonConvergentError(
                    f"weighted term at |k| = {k} overflowed; the stream looks divergent"
                )
            term = math.exp(log_term)
        total += term
        grow_streak = grow_streak + 1 if term >= previous and term > 0.0 else 0
        if grow_streak >= 64:
            raise NonConvergentError(
                f"weighted terms stopped declining near |k| = {k}; the stream looks divergent"
            )
        below_streak = below_streak + 1 if term < tol else 0
        if below_streak >= 8:
            return total
        previous = term
    raise NonConvergentError(f"weighted constant did not settle within |k| <= {k_cap}")


def envelope_theta(alpha: float, q: QBase, abs_z: float, tol: float = 1e-15) -> EnvelopeResult:
    """Certified theta envelope c(alpha, q) exp(beta |log|z||^gamma).

    Symmetric under abs_z -> 1/abs_z since only |log abs_z| enters.
    """
    abs_z = _require_positive(abs_z, "abs_z")
    c = theta_weighted_constant(alpha, q, tol)
    params = meromorphic_bound_params(alpha, q)
    return envelope_meromorphic(params, c, abs_z)


def envelope_theta_as_printed(
    alpha: float, q: QBase, abs_z: float, tol: float = 1e-15
) -> EnvelopeResult:
    """Display variant c(alpha, q) exp(log^2|z| / (alpha log(1/q))).

    Unlike envelope_theta, this exponent is not produced by the
    term-domination argument, so no domination certificate backs it; it is
    kept for comparison only and excluded from certification sweeps.
    """
    abs_z = _require_positive(abs_z, "abs_z")
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1), got {alpha!r}")
    c = theta_weighted_constant(alpha, q, tol)
    lz = math.log(abs_z)
    exponent_term = lz * lz / (alpha * q.log_inv_q)
    return _assemble(c, 0.0, exponent_term)
