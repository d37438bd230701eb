"""Parameter sweeps over padding schemes and winner selection.

A sweep pairs every scheme instance from a parameter grid with every dataset
it can be applied to, evaluates all four metrics, and selects winners:

* lowest ``delta`` among instances with ``beta <= beta_cap``;
* lowest ``beta`` among instances reaching ``alpha2 >= k_threshold``;
* the Pareto front over (``beta`` minimized, ``alpha1`` maximized).

Sweep configuration files are ``key = value`` lines::

    # comments start with '#'
    dataset = names.csv, Swe-fl          # path (relative to the file), column[, label]
    identity = on
    blk.sz = 1..8
    blk.min = 1..32                      # combos with min % sz != 0 are skipped
    taBlk.r = 30..60:5                   # lo..hi[:step], comma-joined lists allowed
    maxL = on                            # one instance per dataset
    beta_cap = 2.0
    k_threshold = 100

The path ``builtin`` names the bundled synthetic dataset file.
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import LengthPreconditionError, SchemeError, SweepError
from .freqdist import FrequencyTable, entropy, from_csv
from .metrics import EvalRecord, evaluate
from .padding import KINDS, SchemeInstance

log = logging.getLogger(__name__)

__all__ = [
    "SweepConfig",
    "SweepReport",
    "Skipped",
    "parse_range",
    "parse_config",
    "load_config",
    "default_config",
    "builtin_dataset",
    "expand_grid",
    "instance_pairs",
    "evaluate_all",
    "best_by_delta",
    "best_by_threshold",
    "pareto_front",
]

THREADS_ENV = "SUCI_PAD_THREADS"
BUILTIN_CSV = "synthetic_lengths.csv"
DEFAULT_CONFIG = "default_sweep.conf"
_SWITCH_KINDS = ("identity", "maxL")


@dataclass
class SweepConfig:
    """Datasets, parameter grids and selection thresholds for one sweep.

    ``grids`` maps a scheme kind to ``{param name: values}``.  ``identity``
    and ``maxL`` take no grid; their presence as a key turns them on.
    """

    datasets: list[tuple[str, FrequencyTable]]
    grids: dict[str, dict[str, list[int]]]
    beta_cap: Optional[float] = None
    k_threshold: Optional[int] = None

    def table(self, label: str) -> FrequencyTable:
        for name, t in self.datasets:
            if name == label:
                return t
        raise SweepError(f"unknown dataset {label!r}")


@dataclass(frozen=True)
class Skipped:
    dataset: str
    scheme: str
    reason: str


@dataclass
class SweepReport:
    records: list[EvalRecord]
    datasets: list[tuple[str, FrequencyTable]] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)
    beta_cap: Optional[float] = None
    k_threshold: Optional[int] = None

    def for_dataset(self, label: str) -> list[EvalRecord]:
        return [r for r in self.records if r.dataset == label]

    @property
    def labels(self) -> list[str]:
        if self.datasets:
            return [name for name, _ in self.datasets]
        return sorted({r.dataset for r in self.records})

    def winners(self) -> dict[str, dict[str, Optional[EvalRecord]]]:
        """Per-selection, per-dataset winners; None where nothing qualifies."""
        out: dict[str, dict[str, Optional[EvalRecord]]] = {"by_delta": {}, "by_threshold": {}}
        cap = math.inf if self.beta_cap is None else self.beta_cap
        for label in self.labels:
            try:
                out["by_delta"][label] = best_by_delta(self, label, cap)
            except SweepError:
                out["by_delta"][label] = None
            if self.k_threshold is not None:
                try:
                    out["by_threshold"][label] = best_by_threshold(self, label, self.k_threshold)
                except SweepError:
                    out["by_threshold"][label] = None
        return out

    def pareto(self) -> list[EvalRecord]:
        front = []
        for label in self.labels:
            front.extend(pareto_front(self.for_dataset(label)))
        return front


# -- configuration -----------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """Expand ``"1..8:2,16"`` to ``[1, 3, 5, 7, 16]`` (sorted, de-duplicated)."""
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                span, _, step = part.partition(":")
                lo, hi = (int(x) for x in span.split(".."))
                step_n = int(step) if step else 1
                if step_n < 1 or hi < lo:
                    raise ValueError
                values.update(range(lo, hi + 1, step_n))
            else:
                values.add(int(part))
        except ValueError:
            raise SweepError(f"bad range {part!r} (expected lo..hi[:step] or an integer)") from None
    if not values:
        raise SweepError(f"empty range {text!r}")
    return sorted(values)


def _bool(key: str, value: str) -> bool:
    v = value.lower()
    if v in ("on", "yes", "true", "1"):
        return True
    if v in ("off", "no", "false", "0"):
        return False
    raise SweepError(f"{key}: expected on/off, got {value!r}")


def builtin_dataset(column: str) -> FrequencyTable:
    data = resources.files("suci_pad") / "data" / BUILTIN_CSV
    return from_csv(data.read_bytes(), column)


def _load_dataset(value: str, base_dir: Path) -> tuple[str, FrequencyTable]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) not in (2, 3) or not all(parts):
        raise SweepError(f"dataset: expected 'path, column[, label]', got {value!r}")
    path, column = parts[0], parts[1]
    label = parts[2] if len(parts) == 3 else column
    if path == "builtin":
        t = builtin_dataset(column)
    else:
        p = Path(path)
        if not p.is_absolute():
            p = base_dir / p
        try:
            raw = p.read_bytes()
        except OSError as exc:
            raise SweepError(f"dataset {path}: {exc.strerror}") from None
        t = from_csv(raw, column)
    return label, FrequencyTable(t.entries, label)


def parse_config(text: str, base_dir: Union[str, Path] = ".") -> SweepConfig:
    """Parse the ``key = value`` sweep format described in the module docstring."""
    base = Path(base_dir)
    datasets: list[tuple[str, FrequencyTable]] = []
    grids: dict[str, dict[str, list[int]]] = {}
    beta_cap = k_threshold = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise SweepError(f"line {lineno}: expected 'key = value'")
        if key == "dataset":
            label, t = _load_dataset(value, base)
            if any(label == name for name, _ in datasets):
                raise SweepError(f"line {lineno}: duplicate dataset label {label!r}")
            datasets.append((label, t))
        elif key == "beta_cap":
            try:
                beta_cap = float(value)
            except ValueError:
                raise SweepError(f"line {lineno}: beta_cap must be a number") from None
        elif key == "k_threshold":
            try:
                k_threshold = int(value)
            except ValueError:
                raise SweepError(f"line {lineno}: k_threshold must be an integer") from None
            if k_threshold < 1:
                raise SweepError(f"line {lineno}: k_threshold must be >= 1")
        elif key in _SWITCH_KINDS:
            if _bool(key, value):
                grids[key] = {}
            else:
                grids.pop(key, None)
        elif "." in key:
            kind, param = key.split(".", 1)
            if kind not in KINDS or kind in _SWITCH_KINDS:
                raise SweepError(f"line {lineno}: unknown scheme kind {kind!r}")
            if param not in KINDS[kind]:
                raise SweepError(
                    f"line {lineno}: {kind} has no parameter {param!r} "
                    f"(expected one of {', '.join(KINDS[kind])})"
                )
            grids.setdefault(kind, {})[param] = parse_range(value)
        else:
            raise SweepError(f"line {lineno}: unknown key {key!r}")
    return SweepConfig(datasets, grids, beta_cap, k_threshold)


def load_config(path: Union[str, Path]) -> SweepConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise SweepError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, p.parent)


def default_config_text() -> str:
    return (resources.files("suci_pad") / "data" / DEFAULT_CONFIG).read_text(encoding="utf-8")


def default_config(datasets: Optional[Sequence[tuple[str, FrequencyTable]]] = None) -> SweepConfig:
    """The bundled grid; ``datasets`` replaces the bundled synthetic dataset."""
    cfg = parse_config(default_config_text())
    if datasets is not None:
        cfg.datasets = list(datasets)
    return cfg


# -- grid expansion ----------------------------------------------------------


def expand_grid(cfg: SweepConfig) -> list[SchemeInstance]:
    """All valid instances of the configured grids in canonical order.

    Combinations that break a scheme invariant (for instance ``blk`` with
    ``min`` not a multiple of ``sz``) are dropped.  ``taBlk`` values of ``r``
    shorter than every dataset's longest name are dropped too, since they
    could not be applied anywhere.  ``maxL`` yields one instance per dataset,
    padding to that dataset's longest length.
    """
    if not cfg.grids:
        raise SweepError("empty grid: no scheme kinds configured")
    longest = [t.max_length for _, t in cfg.datasets if len(t)]
    out: set[SchemeInstance] = set()
    for kind, grid in cfg.grids.items():
        if kind not in KINDS:
            raise SweepError(f"unknown scheme kind {kind!r}")
        if kind == "identity":
            out.add(SchemeInstance("identity"))
            continue
        if kind == "maxL":
            if not longest:
                raise SweepError("maxL needs at least one dataset")
            out.update(SchemeInstance("maxL", (n,)) for n in longest)
            continue
        names = KINDS[kind]
        missing = [n for n in names if not grid.get(n)]
        if missing:
            raise SweepError(f"{kind}: no values for {', '.join(missing)}")
        produced = 0
        for combo in itertools.product(*(grid[n] for n in names)):
            try:
                s = SchemeInstance(kind, combo)
            except SchemeError:
                continue
            produced += 1
            if kind == "taBlk" and longest and s.r < min(longest):
                continue
            out.add(s)
        if produced == 0:
            raise SweepError(f"{kind}: grid contains no valid parameter combination")
    if not out:
        raise SweepError("empty grid: no applicable instances")
    return sorted(out, key=SchemeInstance.sort_key)


def instance_pairs(cfg: SweepConfig, instances: Optional[Sequence[SchemeInstance]] = None):
    """``(label, table, instance)`` triples to evaluate, plus skipped pairs."""
    if instances is None:
        instances = expand_grid(cfg)
    pairs, skipped = [], []
    for label, t in sorted(cfg.datasets, key=lambda d: d[0]):
        for s in sorted(instances, key=SchemeInstance.sort_key):
            if s.kind == "maxL" and s.params[0] != t.max_length:
                # maxL is a per-dataset instance, not a grid.
                continue
            bound = s.max_input
            if bound is not None and t.max_length > bound:
                reason = str(LengthPreconditionError(s.code, t.max_length, bound))
                log.info("skipping %s on %s: %s", s.code, label, reason)
                skipped.append(Skipped(label, s.code, reason))
                continue
            pairs.append((label, t, s))
    return pairs, skipped


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise SweepError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return min(8, os.cpu_count() or 1)


def evaluate_all(
    cfg: SweepConfig, instances: Optional[Sequence[SchemeInstance]] = None
) -> SweepReport:
    """Evaluate every applicable (dataset, instance) pair.

    Records come back ordered by dataset label, then canonical scheme order,
    independent of how many worker threads ran.
    """
    if not cfg.datasets:
        raise SweepError("no datasets configured")
    pairs, skipped = instance_pairs(cfg, instances)
    if not pairs:
        raise SweepError("no applicable (dataset, scheme) pairs")
    hus = {label: entropy(t) for label, t in cfg.datasets}

    def run(item):
        label, t, s = item
        return evaluate(t, s, hus[label])

    workers = _threads()
    if workers > 1 and len(pairs) > 64:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, pairs))
    else:
        records = [run(p) for p in pairs]
    return SweepReport(
        records=records,
        datasets=sorted(cfg.datasets, key=lambda d: d[0]),
        skipped=skipped,
        beta_cap=cfg.beta_cap,
        k_threshold=cfg.k_threshold,
    )


# -- selection ---------------------------------------------------------------


def best_by_delta(report: SweepReport, dataset: str, beta_cap: float = math.inf) -> EvalRecord:
    """Lowest ``delta`` with ``beta <= beta_cap``; ties go to lower beta, then scheme order."""
    pool = [r for r in report.for_dataset(dataset) if r.beta <= beta_cap]
    if not pool:
        raise SweepError(f"no record for {dataset!r} with beta <= {beta_cap}")
    return min(pool, key=lambda r: (r.delta, r.beta, r.scheme.sort_key()))


def best_by_threshold(report: SweepReport, dataset: str, k: int) -> EvalRecord:
    """Lowest ``beta`` with ``alpha2 >= k``; ties go to higher alpha2, then scheme order."""
    pool = [r for r in report.for_dataset(dataset) if r.alpha2 >= k]
    if not pool:
        raise SweepError(f"no record for {dataset!r} reaches {k}-anonymity")
    return min(pool, key=lambda r: (r.beta, -r.alpha2, r.scheme.sort_key()))


def _dominates(a: EvalRecord, b: EvalRecord) -> bool:
    return a.beta <= b.beta and a.alpha1 >= b.alpha1 and (a.beta < b.beta or a.alpha1 > b.alpha1)


def pareto_front(records: Sequence[EvalRecord]) -> list[EvalRecord]:
    """Records not dominated in (beta low, alpha1 high), sorted by beta."""
    ordered = sorted(records, key=lambda r: (r.beta, -r.alpha1, r.scheme.sort_key()))
    front: list[EvalRecord] = []
    best_alpha = -math.inf
    for r in ordered:
        if r.alpha1 > best_alpha:
            front.append(r)
            best_alpha = r.alpha1
        elif r.alpha1 == best_alpha and front and front[-1].beta == r.beta:
            # exact duplicate point: neither dominates the other
            front.append(r)
    return front

