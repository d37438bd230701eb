"""Padding schemes for variable-length identifiers.

Each scheme is described twice: analytically, as the exact distribution of
the padded length for a given input length (:func:`padded_length`), and at
the byte level, as a pad/unpad transform (:func:`pad_bytes`,
:func:`unpad_bytes`).  Metric code only ever uses the analytic form.

Scheme codes::

    identity
    maxL-<len>
    blk-<sz>-<min>
    pwr-<b>-<min>
    rndBlk-<sz>-<blks>-<min>
    rndLen-<len>
    taBlk-<l>-<m>-<r>
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import LengthPreconditionError, PaddingError, SchemeError

__all__ = [
    "KINDS",
    "SchemeInstance",
    "OutputLengthDistribution",
    "parse",
    "render",
    "padded_length",
    "pad_bytes",
    "unpad_bytes",
    "FILLER",
]

# Parameter names per kind, in code order.  Dict order is the canonical
# ordering of kinds.
KINDS: dict[str, tuple[str, ...]] = {
    "identity": (),
    "blk": ("sz", "min"),
    "pwr": ("b", "min"),
    "rndBlk": ("sz", "blks", "min"),
    "rndLen": ("len",),
    "taBlk": ("l", "m", "r"),
    "maxL": ("len",),
}
DETERMINISTIC = frozenset({"identity", "blk", "pwr", "taBlk", "maxL"})
FILLER = b"\x00"

_CODE_RE = re.compile(r"^([A-Za-z]+)((?:-\d+)*)$")


@dataclass(frozen=True, order=False)
class SchemeInstance:
    """A padding scheme kind with its integer parameters."""

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SchemeError(f"unknown padding scheme kind {self.kind!r}")
        params = tuple(int(p) for p in self.params)
        object.__setattr__(self, "params", params)
        names = KINDS[self.kind]
        if len(params) != len(names):
            raise SchemeError(
                f"{self.kind} takes {len(names)} parameter(s) "
                f"({', '.join(names) or 'none'}), got {len(params)}"
            )
        self._validate()

    def _validate(self) -> None:
        p = dict(zip(KINDS[self.kind], self.params))
        kind = self.kind
        if kind in ("blk", "rndBlk"):
            if p["sz"] < 1 or p["min"] < 1:
                raise SchemeError(f"{self.code}: sz and min must be >= 1")
            if p["min"] % p["sz"]:
                raise SchemeError(f"{self.code}: min must be a multiple of sz")
            if kind == "rndBlk" and p["blks"] < 1:
                raise SchemeError(f"{self.code}: blks must be >= 1")
        elif kind == "pwr":
            if p["b"] < 2 or p["min"] < 1:
                raise SchemeError(f"{self.code}: need b >= 2 and min >= 1")
        elif kind == "rndLen":
            if p["len"] < 0:
                raise SchemeError(f"{self.code}: len must be >= 0")
        elif kind == "taBlk":
            if not 1 <= p["l"] <= p["m"] <= p["r"]:
                raise SchemeError(f"{self.code}: need 1 <= l <= m <= r")
        elif kind == "maxL":
            if p["len"] < 1:
                raise SchemeError(f"{self.code}: len must be >= 1")

    def __getattr__(self, name: str) -> int:
        # Named parameter access, e.g. s.sz or s.r.
        kind = object.__getattribute__(self, "kind")
        names = KINDS.get(kind, ())
        if name in names:
            return object.__getattribute__(self, "params")[names.index(name)]
        raise AttributeError(name)

    @property
    def code(self) -> str:
        return "-".join([self.kind, *map(str, self.params)])

    @property
    def deterministic(self) -> bool:
        return self.kind in DETERMINISTIC

    @property
    def max_input(self) -> Optional[int]:
        """Largest input length the scheme accepts, or None if unbounded."""
        if self.kind == "taBlk":
            return self.params[2]
        if self.kind == "maxL":
            return self.params[0]
        return None

    def sort_key(self) -> tuple:
        return (list(KINDS).index(self.kind), self.params)

    def __str__(self) -> str:
        return self.code


def parse(code: str) -> SchemeInstance:
    """Parse a scheme code such as ``"taBlk-6-15-30"``."""
    m = _CODE_RE.match(code.strip())
    if not m:
        raise SchemeError(f"malformed scheme code {code!r}")
    kind, rest = m.groups()
    params = tuple(int(x) for x in rest.split("-")[1:])
    return SchemeInstance(kind, params)


def render(s: SchemeInstance) -> str:
    return s.code


@dataclass(frozen=True)
class OutputLengthDistribution:
    """Exact distribution of the padded length for one input length."""

    support: tuple[tuple[int, float], ...]

    @classmethod
    def uniform(cls, lengths: list[int]) -> "OutputLengthDistribution":
        n = len(lengths)
        return cls(tuple((p, 1.0 / n) for p in sorted(lengths)))

    @classmethod
    def point(cls, length: int) -> "OutputLengthDistribution":
        return cls(((length, 1.0),))

    def __iter__(self) -> Iterator[tuple[int, float]]:
        return iter(self.support)

    def __contains__(self, length: object) -> bool:
        return any(p == length for p, _ in self.support)

    def __len__(self) -> int:
        return len(self.support)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.support)

    def prob(self, length: int) -> float:
        return next((w for p, w in self.support if p == length), 0.0)

    def mean(self) -> float:
        return sum(p * w for p, w in self.support)

    def as_dict(self) -> dict[int, float]:
        return dict(self.support)


def _ceil_to(u: int, sz: int) -> int:
    return -(-u // sz) * sz


def _next_power(u: int, b: int) -> int:
    p = 1
    while p < u:
        p *= b
    return p


def padded_length(s: SchemeInstance, u: int) -> OutputLengthDistribution:
    """Distribution of the padded length when ``s`` pads an input of length ``u``."""
    if u < 1:
        raise SchemeError(f"input length must be >= 1, got {u}")
    bound = s.max_input
    if bound is not None and u > bound:
        raise LengthPreconditionError(s.code, u, bound)

    kind, prm = s.kind, s.params
    if kind == "identity":
        return OutputLengthDistribution.point(u)
    if kind == "blk":
        sz, lo = prm
        return OutputLengthDistribution.point(max(lo, _ceil_to(u, sz)))
    if kind == "pwr":
        b, lo = prm
        return OutputLengthDistribution.point(max(lo, _next_power(u, b)))
    if kind == "taBlk":
        l, m, r = prm
        if u < l:
            return OutputLengthDistribution.point(l)
        return OutputLengthDistribution.point(u if u <= m else r)
    if kind == "maxL":
        return OutputLengthDistribution.point(prm[0])
    if kind == "rndBlk":
        sz, blks, lo = prm
        base = max(lo, _ceil_to(u, sz))
        return OutputLengthDistribution.uniform([base + j * sz for j in range(blks)])
    if kind == "rndLen":
        return OutputLengthDistribution.uniform([u + j for j in range(prm[0] + 1)])
    raise AssertionError(kind)


def pad_bytes(
    s: SchemeInstance, plaintext: bytes, rng: Optional[random.Random] = None
) -> bytes:
    """Append NUL filler so the length follows ``padded_length(s, len(plaintext))``.

    Randomized kinds draw uniformly from the support with ``rng``; without
    one, a system random source is used.  Deterministic kinds ignore ``rng``.
    """
    if not plaintext:
        raise PaddingError("cannot pad an empty plaintext")
    if FILLER in plaintext:
        raise PaddingError("plaintext contains a 0x00 octet")
    dist = padded_length(s, len(plaintext))
    if len(dist) == 1:
        target = dist.support[0][0]
    else:
        if rng is None:
            rng = random.SystemRandom()
        target = dist.support[rng.randrange(len(dist))][0]
    return bytes(plaintext) + FILLER * (target - len(plaintext))


def unpad_bytes(padded: bytes) -> bytes:
    """Strip trailing NUL filler."""
    out = bytes(padded).rstrip(FILLER)
    if not out:
        raise PaddingError("nothing left after removing padding")
    return out
