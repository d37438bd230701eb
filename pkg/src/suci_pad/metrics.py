"""Privacy and cost metrics for a padding scheme applied to a length table.

* ``alpha1`` -- conditional entropy H(U|P) in bits: what the attacker still
  does not know about the unpadded length after seeing the padded one.
* ``alpha2`` -- k-anonymity: the smallest anonymity set over observable
  padded lengths.
* ``beta`` -- bandwidth expansion, expected padded length over expected
  unpadded length.
* ``delta`` -- Euclidean distance from ``(beta, alpha1)`` to ``(0, H(U))``.

Everything is computed from the exact joint distribution of (U, P); no
sampling is involved, including for the randomized schemes.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import LengthPreconditionError
from .freqdist import FrequencyTable, entropy
from .padding import OutputLengthDistribution, SchemeInstance, padded_length

__all__ = [
    "JointDistribution",
    "EvalRecord",
    "joint",
    "alpha1",
    "alpha2",
    "beta",
    "delta",
    "evaluate",
    "padded_entropy",
]


@dataclass(frozen=True)
class JointDistribution:
    """Probability mass over ``(unpadded, padded)`` length pairs."""

    mass: Mapping[tuple[int, int], float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mass", MappingProxyType(dict(self.mass)))

    def marginal_u(self) -> dict[int, float]:
        out: dict[int, float] = defaultdict(float)
        for (u, _), w in self.mass.items():
            out[u] += w
        return dict(out)

    def marginal_p(self) -> dict[int, float]:
        out: dict[int, float] = defaultdict(float)
        for (_, p), w in self.mass.items():
            out[p] += w
        return dict(out)

    def total(self) -> float:
        return math.fsum(self.mass.values())


def _conditionals(t: FrequencyTable, s: SchemeInstance) -> dict[int, OutputLengthDistribution]:
    bound = s.max_input
    if bound is not None and len(t) and t.max_length > bound:
        # report the longest offender, which is what the caller must fix
        where = f"{s.code} on dataset {t.label!r}" if t.label else s.code
        raise LengthPreconditionError(where, t.max_length, bound)
    return {u: padded_length(s, u) for u, _ in t}


def joint(t: FrequencyTable, s: SchemeInstance) -> JointDistribution:
    pop = t.population()
    mass = {}
    for u, dist in _conditionals(t, s).items():
        pu = t[u] / pop
        for p, w in dist:
            mass[(u, p)] = pu * w
    return JointDistribution(mass)


def _h(weights) -> float:
    total = math.fsum(weights)
    return -math.fsum(w / total * math.log2(w / total) for w in weights if w > 0)


def alpha1(j: JointDistribution) -> float:
    """H(U|P) in bits, as the P-weighted average of H(U | P=p)."""
    by_p: dict[int, list[float]] = defaultdict(list)
    for (_, p), w in j.mass.items():
        by_p[p].append(w)
    total = j.total()
    h = math.fsum(math.fsum(ws) / total * _h(ws) for ws in by_p.values())
    return max(h, 0.0)


def padded_entropy(j: JointDistribution) -> float:
    """H(P) in bits."""
    return _h(list(j.marginal_p().values()))


def alpha2(t: FrequencyTable, s: SchemeInstance) -> int:
    """k-anonymity under the possibilistic reading.

    The anonymity set for an observed padded length is everyone whose
    unpadded length can produce it with nonzero probability.
    """
    sets: dict[int, int] = defaultdict(int)
    for u, dist in _conditionals(t, s).items():
        for p in dist.lengths:
            sets[p] += t[u]
    return min(sets.values())


def beta(t: FrequencyTable, s: SchemeInstance) -> float:
    cond = _conditionals(t, s)
    padded = math.fsum(c * cond[u].mean() for u, c in t)
    unpadded = sum(c * u for u, c in t)
    return padded / unpadded


def delta(beta: float, alpha1: float, hU: float) -> float:
    return math.hypot(beta, hU - alpha1)


@dataclass(frozen=True)
class EvalRecord:
    scheme: SchemeInstance
    dataset: str
    alpha1: float
    alpha2: int
    beta: float
    delta: float
    hU: float

    def as_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "scheme": self.scheme.code,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "beta": self.beta,
            "delta": self.delta,
            "hU": self.hU,
        }


def evaluate(t: FrequencyTable, s: SchemeInstance, hU: float | None = None) -> EvalRecord:
    """All four metrics for one scheme instance on one table."""
    if hU is None:
        hU = entropy(t)
    a1 = min(alpha1(joint(t, s)), hU)
    b = beta(t, s)
    return EvalRecord(
        scheme=s,
        dataset=t.label,
        alpha1=a1,
        alpha2=alpha2(t, s),
        beta=b,
        delta=delta(b, a1, hU),
        hU=hU,
    )
