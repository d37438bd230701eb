"""Command-line front end: ``suci-pad <command> ...``.

Exit status is 0 on success, 1 on an expected failure (bad data, failed
precondition, MAC mismatch), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import freqdist, report, suci, sweep
from .errors import SuciPadError
from .metrics import evaluate
from .padding import parse

REPORT_FILES = {
    "csv": "report.csv",
    "json": "report.json",
    "alpha1": "alpha1_vs_beta.svg",
    "alpha2": "alpha2_vs_beta.svg",
}
PRIVATE_KEY_FILE = "home_private.key"
PUBLIC_KEY_FILE = "home_public.key"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.exit(2, f"{self.prog}: usage error: {message}\n")


def _table_from_args(args) -> freqdist.FrequencyTable:
    if args.csv == "builtin":
        return sweep.builtin_dataset(args.column)
    return freqdist.read_csv(args.csv, args.column)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_ingest(args) -> int:
    if args.names:
        names = [ln.rstrip("\r\n") for ln in Path(args.names).read_text(encoding="utf-8").splitlines()]
        names = [n for n in names if n.strip()]
        t = freqdist.from_names(names, args.label or Path(args.names).stem)
    else:
        if not args.column:
            raise SuciPadError("--column is required with --csv")
        t = _table_from_args(args)
    if args.format == "csv":
        sys.stdout.write(t.to_csv())
        return 0
    length, count = freqdist.min_class(t)
    _print_json({
        "label": t.label,
        "population": t.population(),
        "distinct_lengths": len(t),
        "max_length": t.max_length,
        "entropy": freqdist.entropy(t),
        "min_class": {"length": length, "count": count},
        "entries": [[u, c] for u, c in t],
    })
    return 0


def cmd_eval(args) -> int:
    t = _table_from_args(args)
    rec = evaluate(t, parse(args.scheme))
    _print_json(rec.as_dict())
    return 0


def _write_report(rep: sweep.SweepReport, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / REPORT_FILES["csv"]).write_bytes(report.emit(rep, "csv"))
    (out / REPORT_FILES["json"]).write_bytes(report.emit(rep, "json"))
    (out / REPORT_FILES["alpha1"]).write_bytes(report.emit(rep, "svg-scatter", "alpha1"))
    (out / REPORT_FILES["alpha2"]).write_bytes(report.emit(rep, "svg-scatter", "alpha2"))


def cmd_sweep(args) -> int:
    cfg = sweep.load_config(args.config) if args.config else sweep.default_config()
    if args.csv:
        if len(args.column) != len(args.csv):
            raise SuciPadError("give one --column per --csv")
        cfg.datasets = [
            (col, freqdist.read_csv(path, col) if path != "builtin" else sweep.builtin_dataset(col))
            for path, col in zip(args.csv, args.column)
        ]
    if args.beta_cap is not None:
        cfg.beta_cap = args.beta_cap
    if args.k_threshold is not None:
        cfg.k_threshold = args.k_threshold
    rep = sweep.evaluate_all(cfg)
    out = Path(args.out)
    _write_report(rep, out)
    text = report.summary(rep)
    (out / "winners.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    rep = report.report_from_json(Path(args.report).read_bytes())
    if args.beta_cap is not None:
        rep.beta_cap = args.beta_cap
    if args.k_threshold is not None:
        rep.k_threshold = args.k_threshold
    if args.format == "summary":
        data = report.summary(rep).encode("utf-8")
    elif args.format in ("svg-alpha1", "svg-alpha2"):
        data = report.emit(rep, "svg-scatter", args.format.split("-")[1])
    else:
        data = report.emit(rep, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


def _read_key(path: str) -> bytes:
    data = Path(path).read_bytes()
    if len(data) != suci.KEY_LEN:
        raise SuciPadError(f"key file {path} must hold {suci.KEY_LEN} raw octets, has {len(data)}")
    return data


def cmd_keygen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sk, pk = suci.generate_keypair()
    (out / PRIVATE_KEY_FILE).write_bytes(sk)
    (out / PUBLIC_KEY_FILE).write_bytes(pk)
    print(f"wrote {out / PRIVATE_KEY_FILE} and {out / PUBLIC_KEY_FILE}")
    return 0


def cmd_conceal(args) -> int:
    nai = suci.Nai.parse(args.nai)
    pk = _read_key(args.public_key) if args.public_key else None
    rng = random.Random(args.seed) if args.seed is not None else None
    msg = suci.conceal(nai, args.scheme, parse(args.pad), pk, rng,
                       routing_indicator=args.routing_indicator, home_key_id=args.key_id)
    print(msg.to_text())
    return 0


def cmd_reveal(args) -> int:
    msg = suci.SuciMessage.from_text(args.suci)
    sk = _read_key(args.private_key) if args.private_key else None
    print(suci.reveal(msg, parse(args.pad), sk))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="suci-pad", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log skipped instances")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("ingest", help="summarize a name-length table")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="Length,<series>... CSV file ('builtin' for bundled data)")
    src.add_argument("--names", help="text file with one name per line")
    q.add_argument("--column", help="series to read from --csv")
    q.add_argument("--label", help="label for a --names table")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_ingest)

    q = sub.add_parser("eval", help="evaluate one padding scheme on one table")
    q.add_argument("--csv", required=True)
    q.add_argument("--column", required=True)
    q.add_argument("--scheme", required=True, help="scheme code, e.g. taBlk-6-15-30")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("sweep", help="evaluate a parameter grid and write reports")
    q.add_argument("--config", help="sweep config file (default: bundled grid)")
    q.add_argument("--csv", action="append", help="dataset CSV; replaces config datasets")
    q.add_argument("--column", action="append", default=[], help="series for each --csv")
    q.add_argument("--beta-cap", type=float)
    q.add_argument("--k-threshold", type=int)
    q.add_argument("--out", required=True, help="output directory")
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("report", help="re-render a saved report.json")
    q.add_argument("report")
    q.add_argument("--format", default="summary",
                   choices=("summary", "csv", "json", "svg-alpha1", "svg-alpha2"))
    q.add_argument("--beta-cap", type=float)
    q.add_argument("--k-threshold", type=int)
    q.add_argument("--out")
    q.set_defaults(func=cmd_report)

    q = sub.add_parser("keygen", help="write an X25519 home network key pair")
    q.add_argument("--out", required=True, help="directory for the two 32-octet key files")
    q.set_defaults(func=cmd_keygen)

    q = sub.add_parser("conceal", help="pad and conceal username@realm as a SUCI")
    q.add_argument("nai")
    q.add_argument("--pad", default="identity")
    q.add_argument("--scheme", choices=("null", "profileA"), default="profileA")
    q.add_argument("--public-key", help="home network public key file")
    q.add_argument("--routing-indicator", default="0")
    q.add_argument("--key-id", type=int, default=1)
    q.add_argument("--seed", type=int, help="seed for randomized padding")
    q.set_defaults(func=cmd_conceal)

    q = sub.add_parser("reveal", help="recover username@realm from a SUCI")
    q.add_argument("suci")
    q.add_argument("--pad", default="identity")
    q.add_argument("--private-key", help="home network private key file")
    q.set_defaults(func=cmd_reveal)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except SuciPadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
