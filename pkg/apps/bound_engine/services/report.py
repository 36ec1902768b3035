import logging

from apps.bound_engine.services.exponents import asymptotic_exponent, legacy_exponent
from apps.bound_engine.services.theorem import (
    LEGACY_EPSILON,
    asymptotic_bound,
    legacy_bound,
    per_hop_factor_estimate,
)
from apps.bound_engine.types import BoundQuery, BoundReport

logger = logging.getLogger(__name__)


def build_report(
        q: BoundQuery,
        method: str = 'quadrature',
        samples: int | None = None,
        seed: int | None = None,
        threads: int | None = None,
) -> BoundReport:
    factor, stderr = per_hop_factor_estimate(q.N, q.R, q.snr, method, samples, seed, threads)
    e_legacy = legacy_exponent(q.snr)
    e_as = asymptotic_exponent(q.R, q.snr)
    report = BoundReport(
        n=q.n,
        N=q.N,
        R=q.R,
        snr=q.snr,
        snr_db=q.snr_db,
        M=q.M,
        method=method,
        per_hop_factor=factor,
        per_hop_stderr=stderr,
        theorem1_bits=q.bits * factor ** q.n,
        legacy_bits=legacy_bound(q),
        epsilon=LEGACY_EPSILON,
        e_legacy=e_legacy,
        e_as=e_as,
        ratio=e_as / e_legacy,
        asymptotic_bits=asymptotic_bound(q),
    )
    logger.debug("Bound report", extra=report.to_dict())
    return report
