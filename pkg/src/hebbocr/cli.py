"""Command line driver: ``gen``, ``train``, ``test`` and ``kb-diff``.

Exit codes: 0 ok, 1 IO or data error, 2 usage error, 3 knowledge bases differ.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .errors import HebbOCRError, NoInk
from .evaluation import PlotKind, build_report, format_pct, plot_bytes, table_bytes
from .glyphgen import MANIFEST_NAME, DistortionParams, generate_dataset, read_manifest
from .hebbnet import Decision, Regime, TrainingSample, classify, init_zero, train
from .imagegrid import DEFAULT_THRESHOLD, extract_features, parse_pnm
from .kbstore import diff_kb, dumps_kb, format_diff, loads_kb
from .labels import label_name, parse_label_name

EXIT_OK, EXIT_DATA, EXIT_USAGE, EXIT_DIFF = 0, 1, 2, 3

REGIMES = {"one-vs-rest": Regime.ONE_VS_REST, "positive-only": Regime.POSITIVE_ONLY}


class DataError(Exception):
    pass


def _grid(text: str) -> tuple[int, int]:
    try:
        r, c = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None
    if r < 1 or c < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be >= 1")
    return r, c


def _fraction(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} outside [0, 1]")
    return v


def _count(minimum: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v

    return parse


def _u64(text: str) -> int:
    v = _count(0)(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hebbocr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic letter corpus")
    gen.add_argument("--out", type=Path, required=True)
    gen.add_argument("--train-sets", type=_count(1), default=10)
    gen.add_argument("--test-sets", type=_count(1), default=5)
    gen.add_argument("--noise", type=_fraction, default=0.0, help="per-cell flip probability")
    gen.add_argument("--shift", type=_count(0), default=0, help="max translation in cells")
    gen.add_argument("--canvas", type=_grid, default=(10, 10))
    gen.add_argument("--seed", type=_u64, default=0)
    gen.add_argument("--force", action="store_true", help="overwrite an existing manifest")
    gen.set_defaults(func=cmd_gen)

    def features(p):
        p.add_argument("--data", type=Path, required=True, help="dataset root holding the manifest")
        p.add_argument("--kb", type=Path, required=True)
        p.add_argument("--threshold", type=_fraction, default=DEFAULT_THRESHOLD)

    tr = sub.add_parser("train", help="train a knowledge base from the train split")
    features(tr)
    tr.add_argument("--grid", type=_grid, default=(16, 16))
    tr.add_argument("--regime", choices=sorted(REGIMES), default="one-vs-rest")
    tr.add_argument("--epochs", type=_count(1), default=1)
    tr.set_defaults(func=cmd_train)

    te = sub.add_parser("test", help="classify a split and write the report and plot data")
    features(te)
    te.add_argument("--grid", type=_grid, default=None, help="must match the knowledge base")
    te.add_argument("--split", choices=("train", "test"), default="test")
    te.add_argument("--report", type=Path, required=True)
    te.add_argument("--plots", type=Path, default=None, help="directory for the three plot CSVs")
    te.set_defaults(func=cmd_test)

    diff = sub.add_parser("kb-diff", help="compare two knowledge base files")
    diff.add_argument("left", type=Path)
    diff.add_argument("right", type=Path)
    diff.set_defaults(func=cmd_kb_diff)
    return parser


def _load_split(data: Path, split: str, grid, threshold):
    """Yield ``(path, label, features or None)``; None marks a blank sample."""
    manifest = data / MANIFEST_NAME
    if not manifest.is_file():
        raise DataError(f"no manifest at {manifest}")
    try:
        entries = read_manifest(manifest)
    except ValueError as exc:
        raise DataError(f"{manifest}: malformed manifest ({exc})") from None
    for rel, name, _, _ in entries:
        if not rel.startswith(split + "/"):
            continue
        path = data / rel
        try:
            label = parse_label_name(name)
            img = parse_pnm(path.read_bytes())
        except (OSError, HebbOCRError) as exc:
            raise DataError(f"{path}: {exc}") from None
        try:
            yield path, label, extract_features(img, grid, threshold)
        except NoInk:
            yield path, label, None


def _read_kb(path: Path):
    try:
        return loads_kb(path.read_bytes())
    except (OSError, HebbOCRError) as exc:
        raise DataError(f"{path}: {exc}") from None


def cmd_gen(args) -> int:
    params = DistortionParams(args.noise, args.shift, args.canvas, args.seed)
    try:
        entries = generate_dataset(args.train_sets, args.test_sets, params, args.out, args.force)
    except FileExistsError as exc:
        raise DataError(str(exc)) from None
    print(f"wrote {len(entries)} files and {args.out / MANIFEST_NAME}")
    return EXIT_OK


def cmd_train(args) -> int:
    samples, skipped = [], []
    for path, label, x in _load_split(args.data, "train", args.grid, args.threshold):
        if x is None:
            print(f"warning: {path}: blank sample skipped", file=sys.stderr)
            skipped.append(path)
        else:
            samples.append(TrainingSample(label, x))
    if not samples:
        raise DataError(f"no usable training samples under {args.data}")

    counts = Counter(s.label for s in samples)
    kb = init_zero(sorted(counts), regime=REGIMES[args.regime], grid=args.grid)
    kb = train(kb, samples, args.epochs)
    try:
        args.kb.parent.mkdir(parents=True, exist_ok=True)
        args.kb.write_bytes(dumps_kb(kb))
    except OSError as exc:
        raise DataError(f"{args.kb}: {exc}") from None

    for label in sorted(counts):
        print(f"{label_name(label)}\t{counts[label]}")
    print(f"trained {len(kb.neurons)} neurons on {len(samples)} samples, "
          f"{args.epochs} epoch(s); skipped {len(skipped)} blank")
    return EXIT_OK


def cmd_test(args) -> int:
    kb = _read_kb(args.kb)
    kb_grid = (kb.grid_rows, kb.grid_cols)
    if args.grid is not None and args.grid != kb_grid:
        raise DataError(f"--grid {args.grid[0]}x{args.grid[1]} does not match "
                        f"knowledge base grid {kb_grid[0]}x{kb_grid[1]}")

    truth, decisions = [], []
    for _, label, x in _load_split(args.data, args.split, kb_grid, args.threshold):
        truth.append(label)
        decisions.append(Decision(None, {}) if x is None else classify(kb, x))

    # training counts come from the manifest so the table mirrors the corpus shape
    train_counts = Counter(
        parse_label_name(name)
        for rel, name, _, _ in read_manifest(args.data / MANIFEST_NAME)
        if rel.startswith("train/")
    )
    summary = {"grid": kb_grid, "regime": kb.regime.value, "epochs": kb.epochs_trained}
    report = build_report(truth, decisions, train_counts, summary)
    try:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_bytes(table_bytes(report))
        if args.plots is not None:
            args.plots.mkdir(parents=True, exist_ok=True)
            for kind in PlotKind:
                (args.plots / f"{kind.value}.csv").write_bytes(plot_bytes(report, kind))
    except OSError as exc:
        raise DataError(str(exc)) from None

    o = report.overall
    print(f"tested {o.testing_count}: success {format_pct(o.success_rate_pct)}% "
          f"FRR {format_pct(o.frr_pct)}%")
    return EXIT_OK


def cmd_kb_diff(args) -> int:
    diff = diff_kb(_read_kb(args.left), _read_kb(args.right))
    sys.stdout.write(format_diff(diff))
    return EXIT_OK if diff.identical else EXIT_DIFF


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
