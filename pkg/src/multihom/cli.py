"""Command-line interface: ``scan``, ``extrema``, ``figures`` and ``table1``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from multihom.assembly import all_events, event_probability, find_extrema, parse_event, scan
from multihom.decomposition import type_label
from multihom.oracle import oracle_distribution
from multihom.scattering import CouplerSpec, detection_table
from multihom.spectral import OverlapModel, overlap_from_delay

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
ORACLE_TOL = 1e-10
FIGURE_PANELS = (
    ("weights_N2.csv", 1, False),
    ("weights_N4.csv", 2, False),
    ("probs_N4.csv", 2, True),
    ("weights_N6.csv", 3, False),
    ("probs_N6.csv", 3, True),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(v: float) -> str:
    return format(float(v) + 0.0, ".12g")


def parse_range(text: str):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"bad scan range {text!r}, expected min:max:steps") from None
    if steps < 2 or not lo < hi:
        raise UsageError(f"bad scan range {text!r}: need steps >= 2 and min < max")
    return lo, hi, steps


def _events(tokens, k):
    if tokens in (None, [], ["all"]):
        return all_events(k)
    events = []
    for tok in tokens:
        for part in tok.split(";"):
            try:
                m, n = parse_event(part)
            except ValueError:
                raise UsageError(f"bad event {part!r}, expected m,n") from None
            if m < 0 or n < 0 or m + n != 2 * k:
                raise UsageError(f"event {part} does not have {2 * k} photons")
            events.append((m, n))
    return events


def _model(args) -> OverlapModel:
    if args.sigma_omega is not None:
        return OverlapModel(args.sigma_omega)
    return OverlapModel.from_filter(args.fwhm_nm * 1e-9, args.center_nm * 1e-9)


def _k(args) -> int:
    if args.photons_per_mode < 1:
        raise UsageError("--photons-per-mode must be >= 1")
    return args.photons_per_mode


def write_csv(header, data, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in data:
        w.writerow([fmt(v) for v in row])


def table_to_json(header, data) -> str:
    rows = [[float(fmt(v)) for v in row] for row in data]
    return json.dumps({"columns": list(header), "rows": rows}, indent=1) + "\n"


def json_roundtrip(text: str) -> str:
    obj = json.loads(text)
    return table_to_json(obj["columns"], obj["rows"])


def render(header, data, fmt_name: str) -> str:
    if fmt_name == "json":
        return table_to_json(header, data)
    buf = io.StringIO()
    write_csv(header, data, buf)
    return buf.getvalue()


def _emit(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def oracle_check(k, model, xs, coupler) -> float:
    """Largest |assembly - oracle| over all events at the given delays."""
    worst = 0.0
    for x in xs:
        alpha = overlap_from_delay(model, x)
        ref = oracle_distribution(k, alpha, coupler)
        for e in all_events(k):
            worst = max(worst, abs(event_probability(k, alpha, e, coupler) - ref.get(e, 0.0)))
    return worst


def cmd_scan(args) -> int:
    k = _k(args)
    model = _model(args)
    coupler = CouplerSpec(args.transmission)
    lo, hi, steps = parse_range(args.scan_um)
    events = _events(args.events, k)
    xs = np.linspace(lo, hi, steps) * 1e-6
    result = scan(k, model, xs, events, coupler)
    header, data = result.table()
    _emit(render(header, data, args.format), args.output)
    if args.oracle_check:
        worst = oracle_check(k, model, np.linspace(lo, hi, 11) * 1e-6, coupler)
        if worst > ORACLE_TOL:
            print(f"oracle mismatch: max deviation {worst:.3e} > {ORACLE_TOL:g}", file=sys.stderr)
            return EXIT_VERIFY
        print(f"oracle check passed: max deviation {worst:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_extrema(args) -> int:
    k = _k(args)
    (event,) = _events([args.event], k)
    model = _model(args)
    rep = find_extrema(k, event, CouplerSpec(args.transmission), grid=args.grid, model=model)
    if args.format == "json":
        obj = {
            "event": list(rep.event),
            "classification": rep.classification,
            "p_zero_delay": rep.p_zero_delay,
            "p_infinite_delay": rep.p_infinite_delay,
            "extrema": [
                {"kind": e.kind, "u": e.u, "p": e.p, "x_um": [v * 1e6 for v in e.x]}
                for e in rep.extrema
            ],
            "flat_regions": [list(r) for r in rep.flat_regions],
        }
        sys.stdout.write(json.dumps(obj, indent=1) + "\n")
        return EXIT_OK
    m, n = rep.event
    print(f"event ({m},{n}), N={2 * k}: {rep.classification}")
    print(f"P(x=0)={rep.p_zero_delay:.6f} P(x->inf)={rep.p_infinite_delay:.6f}")
    for e in rep.extrema:
        x = e.x[1] * 1e6
        print(f"{e.kind}: u*={e.u:.6f} P*={e.p:.6f} x*=+/-{x:.6f} um")
    for lo, hi in rep.flat_regions:
        print(f"flat: u in [{lo:.6f}, {hi:.6f}]")
    return EXIT_OK


def cmd_figures(args) -> int:
    model = _model(args)
    coupler = CouplerSpec(args.transmission)
    lo, hi, steps = parse_range(args.scan_um)
    xs = np.linspace(lo, hi, steps) * 1e-6
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"cannot create {out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    for name, k, with_probs in FIGURE_PANELS:
        result = scan(k, model, xs, all_events(k) if with_probs else [], coupler)
        header, data = result.table()
        path = out / name
        try:
            with open(path, "w", newline="") as fh:
                write_csv(header, data, fh)
        except OSError as exc:
            print(f"cannot write {path}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def table1_text(ks=(1, 2), exact=True, rows="paper") -> str:
    lines = []
    for k in ks:
        table = detection_table(k, CouplerSpec(), exact=exact)
        labels = []
        for j in range(k, -1, -1):
            lab = type_label(j, k)
            labels.append(f"{lab}_j{j}" if lab == "inter" and k > 2 else lab)
        lines.append("\t".join([f"p^({2 * k};m,n)"] + labels))
        events = [(2 * k, 0), (k, k)] if rows == "paper" else table[k].events()
        for e in events:
            vals = [table[j][e] for j in range(k, -1, -1)]
            cells = [str(v) if exact else repr(float(v)) for v in vals]
            lines.append("\t".join([f"({e[0]},{e[1]})"] + cells))
        lines.append("")
    return "\n".join(lines)


def cmd_table1(args) -> int:
    ks = args.photons_per_mode or [1, 2]
    if any(k < 1 for k in ks):
        raise UsageError("--photons-per-mode must be >= 1")
    sys.stdout.write(table1_text(ks, exact=not args.float, rows="all" if args.all_events else "paper"))
    return EXIT_OK


def _spectral_args(p):
    p.add_argument("--sigma-omega", type=float, default=None,
                   help="amplitude-Gaussian spectral width in rad/s (overrides the filter)")
    p.add_argument("--fwhm-nm", type=float, default=4.0)
    p.add_argument("--center-nm", type=float, default=780.0)
    p.add_argument("--transmission", type=float, default=1 / math.sqrt(2))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multihom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scan", help="event probabilities along a delay scan")
    p.add_argument("--photons-per-mode", type=int, required=True)
    _spectral_args(p)
    p.add_argument("--scan-um", default="-400:400:801", help="min:max:steps in micrometers")
    p.add_argument("--events", nargs="+", default=["all"], help="m,n pairs or 'all'")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None)
    p.add_argument("--oracle-check", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("extrema", help="locate interior extrema of one event probability")
    p.add_argument("--photons-per-mode", type=int, required=True)
    p.add_argument("--event", required=True)
    _spectral_args(p)
    p.add_argument("--grid", type=int, default=257)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("figures", help="write weight and probability CSVs for N = 2, 4, 6")
    p.add_argument("--out-dir", required=True)
    _spectral_args(p)
    p.add_argument("--scan-um", default="-400:400:801")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("table1", help="detection probabilities per distinguishability type")
    p.add_argument("--photons-per-mode", type=int, action="append")
    p.add_argument("--float", action="store_true", help="print floats instead of fractions")
    p.add_argument("--all-events", action="store_true")
    p.set_defaults(func=cmd_table1)
    return parser


def _join_ranges(argv):
    # "-400:400:801" looks like an option to argparse
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--scan-um":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_ranges(argv))
        return args.func(args)
    except (UsageError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
