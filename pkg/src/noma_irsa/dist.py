"""Replica-count degree distributions.

A distribution is written as a polynomial whose exponents are replica counts
and whose coefficients are probabilities, e.g. "0.5x^2+0.5x^3" means a user
sends two replicas or three replicas with equal probability.  The mean
replica count is always derived from the coefficients, never supplied
externally.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

import numpy as np

# Parser accepts coefficient sums within this window of 1 and renormalizes;
# anything further off is rejected as a typo rather than silently fixed.
COEFF_SUM_TOL = 1e-6

_SUM_TOL = 1e-9
_MEAN_TOL = 1e-12

_TERM_RE = re.compile(
    r"^\s*(?:(?P<coeff>\d*\.?\d+(?:[eE][+-]?\d+)?)\s*\*?\s*)?x\s*(?:\^\s*(?P<deg>\d+))?\s*$"
)


class DistributionError(ValueError):
    """Malformed or inconsistent degree-distribution input."""


@dataclass(frozen=True)
class DegreeDistribution:
    """Validated pmf over the number of replicas a user transmits per frame.

    terms holds (degree, probability) pairs sorted by ascending degree;
    max_degree and avg_degree are derived from terms and re-checked on
    construction so hand-built instances cannot be inconsistent.
    """

    terms: tuple[tuple[int, float], ...]
    max_degree: int
    avg_degree: float

    def __post_init__(self):
        if not self.terms:
            raise DistributionError("distribution has no terms")
        degrees = [d for d, _ in self.terms]
        probs = [p for _, p in self.terms]
        if any(d < 1 for d in degrees):
            raise DistributionError(f"degrees must be >= 1, got {min(degrees)}")
        if sorted(set(degrees)) != degrees:
            raise DistributionError("degrees must be distinct and sorted ascending")
        if any(not (0.0 < p <= 1.0) for p in probs):
            raise DistributionError("probabilities must lie in (0, 1]")
        total = sum(probs)
        if abs(total - 1.0) > _SUM_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, expected 1")
        if self.max_degree != max(degrees):
            raise DistributionError(
                f"max_degree {self.max_degree} != largest term degree {max(degrees)}"
            )
        mean = sum(d * p for d, p in self.terms)
        if abs(mean - self.avg_degree) > _MEAN_TOL:
            raise DistributionError(
                f"avg_degree {self.avg_degree!r} inconsistent with terms (computed {mean!r})"
            )
        if any(d == 1 for d in degrees):
            warnings.warn(
                "degree-1 term present: a single replica cannot be recovered "
                "through cancellation once lost",
                stacklevel=3,
            )

    @classmethod
    def from_terms(cls, pairs) -> "DegreeDistribution":
        """Build from (degree, probability) pairs; derives max/avg degree."""
        terms = tuple(sorted((int(d), float(p)) for d, p in pairs))
        if not terms:
            raise DistributionError("distribution has no terms")
        mean = sum(d * p for d, p in terms)
        return cls(terms=terms, max_degree=max(d for d, _ in terms), avg_degree=mean)

    def degrees(self) -> np.ndarray:
        return np.array([d for d, _ in self.terms], dtype=np.int64)

    def probs(self) -> np.ndarray:
        return np.array([p for _, p in self.terms], dtype=np.float64)


def parse_distribution(text: str) -> DegreeDistribution:
    """Parse a polynomial like "0.5465x^2+0.1623x^3+0.2912x^8".

    A missing coefficient means 1.0 and a bare "x" means degree 1.
    Coefficients off unit sum by at most COEFF_SUM_TOL are renormalized;
    larger deviations raise DistributionError.
    """
    if not isinstance(text, str) or not text.strip():
        raise DistributionError("empty distribution text")
    pairs: list[tuple[int, float]] = []
    for raw in text.split("+"):
        m = _TERM_RE.match(raw)
        if m is None:
            raise DistributionError(f"malformed term {raw.strip()!r}")
        coeff = float(m.group("coeff")) if m.group("coeff") else 1.0
        degree = int(m.group("deg")) if m.group("deg") else 1
        if degree < 1:
            raise DistributionError(f"degree must be >= 1, got {degree}")
        if coeff <= 0.0:
            raise DistributionError(f"coefficient must be positive in term {raw.strip()!r}")
        pairs.append((degree, coeff))

    degs = [d for d, _ in pairs]
    if len(set(degs)) != len(degs):
        dup = sorted(d for d in set(degs) if degs.count(d) > 1)
        raise DistributionError(f"duplicate degrees {dup}")

    total = sum(c for _, c in pairs)
    if abs(total - 1.0) > COEFF_SUM_TOL:
        raise DistributionError(f"coefficients sum to {total:.6g}, outside 1 +/- {COEFF_SUM_TOL:g}")
    if total != 1.0:
        scaled = [(d, c / total) for d, c in pairs]
        # absorb the float residual into the largest term so the stored
        # probabilities sum to exactly 1.0 and reparsing is a no-op
        resid = 1.0 - sum(c for _, c in scaled)
        j = max(range(len(scaled)), key=lambda i: scaled[i][1])
        scaled[j] = (scaled[j][0], scaled[j][1] + resid)
        pairs = scaled
    return DegreeDistribution.from_terms(pairs)


def format_distribution(dist: DegreeDistribution) -> str:
    """Canonical text form; parse_distribution(format_distribution(d)) == d."""
    parts = []
    for degree, prob in dist.terms:
        if prob == 1.0:
            parts.append(f"x^{degree}")
        else:
            parts.append(f"{prob!r}x^{degree}")
    return "+".join(parts)


def sample_degrees(dist: DegreeDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized inverse-CDF sampling of replica counts."""
    cum = np.cumsum(dist.probs())
    cum[-1] = 1.0  # guard float drift; rng.random() < 1
    idx = np.searchsorted(cum, rng.random(size), side="right")
    return dist.degrees()[idx]


def sample_degree(dist: DegreeDistribution, rng: np.random.Generator) -> int:
    """Draw one replica count according to the distribution."""
    return int(sample_degrees(dist, rng, 1)[0])
