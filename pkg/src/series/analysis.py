"""
Deviations of S, the Poincare series of the residue field and the divisor-sum
coefficients whose zero pattern separates rational from irrational behaviour.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from sympy import divisors, isprime

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import InvariantError, PreconditionError
from src.groebner.ideal import Ideal, groebner_basis, height, hilbert_series
from src.koszul.tate import TateResolvent, minimal_resolvent
from src.modules.modules import free_resolution, residue_field
from src.series.truncated import TruncatedSeries, log_derivative

logger = logging.getLogger(__name__)

NO_SMALL_PERIOD = "no small period"


@dataclass
class DeviationSeries:
    """eps_1, eps_2, ... known through index horizon."""

    eps: List[int]
    source: str
    horizon: int

    def __getitem__(self, i: int) -> int:
        """eps_i, zero past the computed range."""
        if i < 1:
            raise IndexError(i)
        return self.eps[i - 1] if i <= len(self.eps) else 0


def deviations(X: TateResolvent) -> DeviationSeries:
    """
    eps_1 = n and eps_{i+1} = e_i for 1 <= i <= D - 1.

    Args:
        X: Minimal resolvent of R -> R/I with I in m^2

    Returns:
        DeviationSeries with horizon D
    """
    if not X.is_minimal():
        raise PreconditionError("deviations are read off a minimal resolvent only")
    counts = X.counts()
    eps = [X.ring.n] + counts[:X.bound - 1]
    return DeviationSeries(eps, "resolvent", X.bound)


def poincare_from_deviations(dev: DeviationSeries, N: int, allow_beyond_horizon: bool = False) -> TruncatedSeries:
    """
    prod_{i odd} (1 + z^i)^eps_i / prod_{i even} (1 - z^i)^eps_i to order N.

    Args:
        dev: Deviations
        N: Truncation order
        allow_beyond_horizon: Treat unknown deviations as zero past the horizon

    Returns:
        The series, with horizon min(N, dev.horizon)
    """
    if N > dev.horizon and not allow_beyond_horizon:
        raise PreconditionError(f"order {N} lies beyond the deviation horizon {dev.horizon}")
    result = TruncatedSeries.one(N)
    for i in range(1, N + 1):
        e = dev[i]
        if not e:
            continue
        factor = [0] * (N + 1)
        factor[0] = 1
        if i % 2:
            factor[i] = 1
            result = result * TruncatedSeries(factor).power(e)
        else:
            factor[i] = -1
            result = result * TruncatedSeries(factor).power(-e)
    result.horizon = min(N, dev.horizon)
    return result


def deviations_from_poincare(P: TruncatedSeries) -> DeviationSeries:
    """Invert the product formula: eps_k = P_k minus the z^k coefficient of the product over j < k."""
    N = P.horizon
    partial = TruncatedSeries.one(P.order)
    eps: List[int] = []
    for k in range(1, N + 1):
        value = P[k] - partial[k]
        if value.denominator != 1 or value < 0:
            raise InvariantError(f"eps_{k} = {value} is not a non-negative integer")
        e = int(value)
        eps.append(e)
        if e:
            factor = [0] * (P.order + 1)
            factor[0] = 1
            factor[k] = 1 if k % 2 else -1
            partial = partial * TruncatedSeries(factor).power(e if k % 2 else -e)
    return DeviationSeries(eps, "poincare", N)


def residue_field_poincare(I: Ideal, N: int, config: EngineConfig = DEFAULT_CONFIG) -> TruncatedSeries:
    """
    Poincare series of k over S = R/I.

    When the reduced Groebner basis is quadratic, S is Koszul and the series
    is 1 / H_S(-z) to order N. Otherwise it is read off the minimal
    resolution of k up to min(N, module_bound).
    """
    basis = groebner_basis(I).basis
    if all(sum(g.LM) == 2 for g in basis):
        series = hilbert_series(I, N).negate_variable().inverse()
        logger.debug("Koszul algebra: Poincare series from the Hilbert series")
        return series
    bound = min(N, config.module_bound)
    _, betti = free_resolution(residue_field(I), bound, config, decide_end=False)
    totals = betti.totals()
    coefficients = totals + [0] * (N + 1 - len(totals))
    return TruncatedSeries(coefficients[:N + 1], horizon=N if betti.complete else bound)


def alpha_coefficients(dev: DeviationSeries, N: int) -> TruncatedSeries:
    """
    alpha_i = sum over divisors 1 < j < i of i of (-1)^(j+1) j eps_j, for i <= N.

    Proper divisors never exceed N/2, so the deviations must be known that far.
    """
    if dev.horizon < N // 2:
        raise PreconditionError(f"alpha up to {N} needs deviations through {N // 2}, known through {dev.horizon}")
    coefficients = [0] * (N + 1)
    for i in range(2, N + 1):
        coefficients[i] = sum((-1) ** (j + 1) * j * dev[j] for j in divisors(i) if 1 < j < i)
    return TruncatedSeries(coefficients)


def alpha_identity_coefficients(dev: DeviationSeries, N: int) -> TruncatedSeries:
    """
    z * [lambda P(-z) - F'(-z) - eps_1 sum z^i] with F = sum eps_i z^i.

    The coefficient of z^k equals alpha_k for k >= 2; the z^1 coefficient is
    -eps_1.
    """
    P = poincare_from_deviations(dev, N + 1, allow_beyond_horizon=True)
    lam = log_derivative(P).negate_variable()
    F = TruncatedSeries([0] + [dev[i] for i in range(1, N + 2)])
    Fprime = F.derivative().negate_variable()
    constant = TruncatedSeries.geometric(N).scale(dev[1])
    return (lam - Fprime - constant).shift(1)


@dataclass
class OddPrimeWindow:
    zeros: List[int]
    primes: List[int]

    @property
    def match(self) -> bool:
        return self.zeros == self.primes


def odd_prime_window(alpha: TruncatedSeries, lo: int, hi: int) -> OddPrimeWindow:
    """Odd indices of [lo, hi] where alpha vanishes, next to the odd primes there."""
    odd = [i for i in range(lo, hi + 1) if i % 2]
    return OddPrimeWindow([i for i in odd if not alpha[i]], [i for i in odd if isprime(i)])


@dataclass
class MahlerReport:
    """Zero pattern of a prefix past the burn-in."""

    period: Optional[int]
    residues: List[int] = field(default_factory=list)
    consistent: bool = False

    def describe(self) -> str:
        if self.period is None:
            return NO_SMALL_PERIOD
        return f"period {self.period}, zero residues {self.residues}"


def mahler_zero_pattern(prefix: TruncatedSeries, burn_in: int) -> MahlerReport:
    """
    Smallest r <= length/4 whose residue classes split the zeros past burn_in.

    Args:
        prefix: Series; coefficients up to its horizon are inspected
        burn_in: Indices <= burn_in are ignored

    Returns:
        MahlerReport, with period None when no small period fits
    """
    top = min(prefix.order, prefix.horizon)
    length = top + 1
    if length < 4 * burn_in:
        raise PreconditionError(f"a prefix of length {length} is too short for burn-in {burn_in}")
    indices = range(burn_in + 1, top + 1)
    for r in range(1, length // 4 + 1):
        residues = []
        fits = True
        for c in range(r):
            zero = {not prefix[k] for k in indices if k % r == c}
            if len(zero) > 1:
                fits = False
                break
            if zero == {True}:
                residues.append(c)
        if fits:
            return MahlerReport(r, residues, True)
    return MahlerReport(None, [], True)


@dataclass
class CiSeriesVerdict:
    is_ci_certified: bool
    vanishing_index: Optional[int]
    mahler_flag: str
    deviations: DeviationSeries
    mahler: Optional[MahlerReport] = None
    caveats: List[str] = field(default_factory=list)


def ci_series_test(I: Ideal, D: int, config: EngineConfig = DEFAULT_CONFIG,
                   X: Optional[TateResolvent] = None) -> CiSeriesVerdict:
    """
    Complete intersection test from the deviations, with the alpha zero pattern.

    Args:
        I: Ideal in m^2
        D: Resolvent bound, at least 3
        config: Engine configuration
        X: A minimal resolvent to reuse

    Returns:
        CiSeriesVerdict; a vanishing eps_i for 3 <= i <= D must agree with
        mu(I) = height(I)
    """
    if D < 3:
        raise PreconditionError("the deviation test needs D >= 3")
    if X is None or X.bound < D:
        X = minimal_resolvent(I, D, config)
    dev = deviations(X)
    vanishing = next((i for i in range(3, D + 1) if dev[i] == 0), None)
    direct = len(I.minimal_generators()) == height(I)
    if (vanishing is not None) != direct:
        raise InvariantError(f"deviation vanishing at {vanishing} disagrees with mu = height ({direct})")
    if direct:
        return CiSeriesVerdict(True, vanishing, "not applicable", dev)
    N = config.series_order
    long_dev = dev
    P = residue_field_poincare(I, N, config)
    if P.horizon > dev.horizon:
        long_dev = deviations_from_poincare(P)
        if long_dev.eps[:D] != dev.eps[:D]:
            raise InvariantError("deviations from the resolvent and from the Poincare series disagree")
    top = min(N, 2 * long_dev.horizon)
    alpha = alpha_coefficients(long_dev, top)
    i0 = next((i for i in range(2, long_dev.horizon + 1)
               if all(long_dev[j] > 0 for j in range(i, long_dev.horizon + 1))), long_dev.horizon)
    burn_in = i0 * i0
    verdict = CiSeriesVerdict(False, None, "", dev)
    if top + 1 < 4 * burn_in:
        verdict.mahler_flag = "window too short"
        verdict.caveats.append(f"alpha known to {top}, burn-in {burn_in}")
        return verdict
    report = mahler_zero_pattern(alpha, burn_in)
    verdict.mahler = report
    window = odd_prime_window(alpha, burn_in + 1, top)
    if report.period is None and window.match:
        verdict.mahler_flag = "prime-pattern zeros, no small period"
    else:
        verdict.mahler_flag = report.describe()
    verdict.caveats.append("finite-window evidence only")
    return verdict
