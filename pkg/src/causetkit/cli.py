"""Command-line front end: poset validation, quantification tables, particle
paths and kinematics, and checkerboard kernels.

All output is deterministic for fixed inputs, flags and seed.  Exit codes:
0 success, 1 domain violation, 2 I/O or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import io
import csv
import os
import sys
from fractions import Fraction

from . import checkerboard as cb
from . import kinematics as kin
from . import quantify as qt
from .errors import CapExceededError, CausetkitError, SchemaError
from .exact import Surd
from .poset import load_poset, validate

OUTDIR_ENV = "CAUSETKIT_OUTDIR"

_TOLERANCE = 1e-12

_PARTICLE_NOTES = (
    "Conventions: a P-move steps +1/2 in x with segment beta = +1, a Q-move "
    "steps -1/2 with beta = -1.  Momentum is p = (rQ - rP)/2, so a particle "
    "that influences chain P more often carries negative momentum and "
    "negative beta = p/E."
)

_CHECKERBOARD_NOTES = (
    "The lattice uses one integer site step per time step (P -> +1, Q -> -1); "
    "half-unit spacetime coordinates are recovered as (t, x) = (step/2, site/2). "
    "Propagator magnitudes come from --theta as (cos, sin), or from --mass and "
    "--eps as (cos(m*eps), sin(m*eps))."
)


# -- deterministic serialization ----------------------------------------------


def format_number(value) -> str:
    """Fixed 17-significant-digit float formatting for golden-file stability."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def canonical_json(obj) -> str:
    """JSON with sorted keys and fixed float formatting."""
    pieces: list[str] = []
    _write_json(obj, pieces)
    return "".join(pieces)


def _write_json(obj, pieces: list[str]) -> None:
    if obj is None:
        pieces.append("null")
    elif isinstance(obj, bool):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, str):
        pieces.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, (float, Fraction, Surd)):
        pieces.append(format_number(obj))
    elif isinstance(obj, dict):
        pieces.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                pieces.append(", ")
            _write_json(str(key), pieces)
            pieces.append(": ")
            _write_json(obj[key], pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, item in enumerate(obj):
            if i:
                pieces.append(", ")
            _write_json(item, pieces)
        pieces.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format_number(value)


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


# -- SVG (optional decoration) --------------------------------------------------


def probability_svg(slices: list[tuple[int, dict[int, float]]]) -> str:
    """Bar chart of probability vs position, one band per time slice."""
    bar = 8
    band = 64
    positions = sorted({x for _, probs in slices for x in probs})
    if not positions:
        positions = [0]
    lo, hi = positions[0], positions[-1]
    width = (hi - lo + 1) * bar + 80
    height = band * len(slices) + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
    ]
    for i, (step, probs) in enumerate(slices):
        base = (i + 1) * band
        parts.append(
            f'<text x="4" y="{base - band // 2}" font-size="10">t={step}</text>'
        )
        for x in sorted(probs):
            p = probs[x]
            h = max(1, round(p * (band - 14)))
            left = 60 + (x - lo) * bar
            parts.append(
                f'<rect x="{left}" y="{base - h}" width="{bar - 1}" height="{h}" '
                f'fill="#336699"><title>x={x} p={format_number(p)}</title></rect>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- output plumbing -------------------------------------------------------------


def _outdir(args) -> str | None:
    return args.outdir or os.environ.get(OUTDIR_ENV)


def _deliver(args, artifacts: dict[str, str], primary: str) -> None:
    """Write all artifacts into the output directory, or print the primary one."""
    outdir = _outdir(args)
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        for name, text in artifacts.items():
            path = os.path.join(outdir, name)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(path)
    else:
        sys.stdout.write(artifacts[primary])


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    poset = load_poset(args.poset)
    report = validate(poset)
    if args.emit == "json":
        doc = {
            "ok": report.ok,
            "violations": [
                {"rule": v.rule, "message": v.message, "events": list(v.events)}
                for v in report.violations
            ],
        }
        print(canonical_json(doc))
    else:
        if report.ok:
            print(f"ok: {poset.n_events} events, {len(poset.chains)} chains")
        for v in report.violations:
            print(f"violation[{v.rule}]: {v.message}")
    return 0 if report.ok else 1


def cmd_quantify(args) -> int:
    poset = load_poset(args.poset)
    mu = Fraction(args.mu)
    valuation_p = qt.ChainValuation.from_poset(poset, args.chain, mu)
    valuation_q = None
    if args.chain2:
        valuation_q = qt.ChainValuation.from_poset(poset, args.chain2, mu)
    rows = qt.quantification_rows(poset, valuation_p, valuation_q)
    columns = ["event_id", "p_fwd", "p_bwd", "q_fwd", "q_bwd", "t", "x"]
    artifacts = {}
    if args.emit == "json":
        doc = {
            "chain": args.chain,
            "chain2": args.chain2,
            "mu": mu,
            "rows": [
                {c: (None if row[c] is None else _jsonable(row[c])) for c in columns}
                for row in rows
            ],
        }
        artifacts["quantify.json"] = canonical_json(doc) + "\n"
        _deliver(args, artifacts, "quantify.json")
    else:
        artifacts["quantify.csv"] = rows_to_csv(rows, columns)
        _deliver(args, artifacts, "quantify.csv")
    return 0


def _jsonable(value):
    if isinstance(value, (int, str)) or value is None:
        return value
    return float(value)


def _parse_counts(text: str) -> kin.UnorderedInfluenceCount:
    try:
        p, q = (int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--counts expects 'P,Q' integers, got {text!r}") from None
    return kin.UnorderedInfluenceCount(p, q)


def cmd_particle(args) -> int:
    sources = [s for s in (args.counts, args.sequence, args.random) if s is not None]
    if not sources:
        raise ValueError("one of --counts, --sequence or --random is required")
    if len(sources) > 1:
        raise ValueError("--counts, --sequence and --random are mutually exclusive")

    seq = None
    seed = None
    if args.sequence is not None:
        seq = kin.InfluenceSequence.from_string(args.sequence, args.initial_helicity)
        counts = seq.counts()
    elif args.random is not None:
        length, prob_p, seed = int(args.random[0]), float(args.random[1]), int(args.random[2])
        seq = kin.random_sequence(length, prob_p, seed)
        if args.initial_helicity:
            seq = kin.InfluenceSequence(seq.moves, args.initial_helicity)
        counts = seq.counts()
    else:
        counts = _parse_counts(args.counts)

    state: dict = {
        "counts": {"P": counts.P, "Q": counts.Q},
        "orderings": kin.count_orderings(counts),
    }
    if seq is not None:
        state["sequence"] = str(seq)
    if seed is not None:
        state["seed"] = seed
    if args.dp is not None or args.dq is not None:
        if args.dp is None or args.dq is None:
            raise ValueError("--dp and --dq must be given together")
        n_events = args.events if args.events is not None else counts.P + counts.Q
        r_p, r_q = kin.rates(n_events, Fraction(args.dp), Fraction(args.dq))
        ks = kin.kinematic_state(r_p, r_q)
        state["kinematics"] = {
            "rP": float(r_p),
            "rQ": float(r_q),
            "M": float(ks.mass),
            "E": float(ks.energy),
            "p": float(ks.momentum),
            "beta": float(ks.beta),
        }

    artifacts = {"particle_state.json": canonical_json(state) + "\n"}
    if seq is not None:
        path = kin.sequence_to_path(seq)
        artifacts["particle_path.csv"] = rows_to_csv(
            kin.path_rows(path), ["step", "t", "x", "move", "beta", "helicity"]
        )
    if args.emit == "csv":
        if seq is None:
            raise ValueError("path CSV requires --sequence or --random")
        _deliver(args, artifacts, "particle_path.csv")
    else:
        _deliver(args, artifacts, "particle_state.json")
    return 0


def _kernel_rows(step: int, k: cb.Kernel) -> list[dict]:
    rows = []
    for (position, helicity), amp in sorted(k.items()):
        rows.append(
            {
                "t": step,
                "x": position,
                "helicity": helicity,
                "amp_re": amp.real,
                "amp_im": amp.imag,
                "probability": cb.born(amp),
            }
        )
    return rows


def cmd_checkerboard(args) -> int:
    if args.theta is not None:
        if args.mass is not None or args.eps is not None:
            raise ValueError("--theta and --mass/--eps are mutually exclusive")
        pp = cb.propagators_from_theta(args.theta)
    elif args.mass is not None:
        pp = cb.propagators_from_mass(args.mass, args.eps if args.eps is not None else 1.0)
    else:
        pp = cb.zero_momentum_propagators()

    steps = args.steps
    rows: list[dict] = []
    slices: list[tuple[int, dict[int, float]]] = []
    discrepancy = None

    if args.method in ("matrix", "both"):
        field = cb.CheckerboardField.point_source(args.initial, steps)
        history = [(0, cb.field_kernel(field))]
        for _ in range(steps):
            field = cb.step_field(field, pp)
            history.append((field.step_count, cb.field_kernel(field)))
        for step, k in history:
            rows.extend(_kernel_rows(step, k))
            probs: dict[int, float] = {}
            for (position, _), amp in k.items():
                probs[position] = probs.get(position, 0.0) + cb.born(amp)
            slices.append((step, probs))
        final = history[-1][1]
    else:
        final = cb.kernel_pathsum(steps, pp, args.initial, cap=args.cap)
        rows.extend(_kernel_rows(steps, final))
        probs = {}
        for (position, _), amp in final.items():
            probs[position] = probs.get(position, 0.0) + cb.born(amp)
        slices.append((steps, probs))

    if args.method == "both":
        pathsum = cb.kernel_pathsum(steps, pp, args.initial, cap=args.cap)
        discrepancy = cb.kernel_discrepancy(final, pathsum)

    artifacts: dict[str, str] = {}
    primary = f"checkerboard.{args.emit}"
    if args.emit == "json":
        doc = {
            "steps": steps,
            "a": pp.a,
            "b": pp.b,
            "initial_helicity": args.initial,
            "method": args.method,
            "tolerance": _TOLERANCE,
            "rows": [
                {k: _jsonable(v) for k, v in row.items()} for row in rows
            ],
        }
        if discrepancy is not None:
            doc["max_discrepancy"] = discrepancy
        artifacts[primary] = canonical_json(doc) + "\n"
    elif args.emit == "svg":
        artifacts[primary] = probability_svg(slices)
    else:
        artifacts[primary] = rows_to_csv(
            rows, ["t", "x", "helicity", "amp_re", "amp_im", "probability"]
        )
        if discrepancy is not None:
            print(f"max_discrepancy {format_number(discrepancy)}", file=sys.stderr)
    _deliver(args, artifacts, primary)
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causetkit",
        description="Causal posets quantified by observer chains, and the "
        "checkerboard amplitude calculus built on them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check a poset document against the ordering rules")
    p_val.add_argument("poset", help="poset document (JSON)")
    p_val.add_argument("--emit", choices=["text", "json"], default="text")
    p_val.add_argument("--outdir", default=None, help=f"output directory (default ${OUTDIR_ENV})")
    p_val.set_defaults(func=cmd_validate)

    p_q = sub.add_parser(
        "quantify",
        help="chain-based coordinates for every event",
        description="Single-chain mode emits forward/backward projection pairs; "
        "adding --chain2 emits coordinated (t, x) coordinates.",
    )
    p_q.add_argument("poset")
    p_q.add_argument("--chain", required=True, help="observer chain id")
    p_q.add_argument("--chain2", default=None, help="second coordinated chain id")
    p_q.add_argument("--mu", default="1", help="unit of measure along the chains")
    p_q.add_argument("--emit", choices=["csv", "json"], default="csv")
    p_q.add_argument("--outdir", default=None)
    p_q.set_defaults(func=cmd_quantify)

    p_p = sub.add_parser(
        "particle",
        help="influence sequences, zig-zag paths and rate kinematics",
        description=_PARTICLE_NOTES,
    )
    p_p.add_argument("--counts", default=None, metavar="P,Q", help="unordered move counts")
    p_p.add_argument("--sequence", default=None, metavar="MOVES", help="move string, e.g. PPQPQ")
    p_p.add_argument(
        "--random",
        nargs=3,
        default=None,
        metavar=("LENGTH", "PROB_P", "SEED"),
        help="seed-deterministic random sequence",
    )
    p_p.add_argument("--initial-helicity", choices=["P", "Q"], default=None)
    p_p.add_argument("--dp", default=None, help="projected interval length on chain P")
    p_p.add_argument("--dq", default=None, help="projected interval length on chain Q")
    p_p.add_argument("--events", type=int, default=None, help="event count for rates")
    p_p.add_argument("--emit", choices=["json", "csv"], default="json")
    p_p.add_argument("--outdir", default=None)
    p_p.set_defaults(func=cmd_particle)

    p_c = sub.add_parser(
        "checkerboard",
        help="propagator kernels by path sum or transfer matrix",
        description=_CHECKERBOARD_NOTES,
    )
    p_c.add_argument("--steps", type=int, required=True)
    p_c.add_argument("--theta", type=float, default=None, help="(a, b) = (cos, sin) of theta")
    p_c.add_argument("--mass", type=float, default=None)
    p_c.add_argument("--eps", type=float, default=None, help="time step (default 1.0)")
    p_c.add_argument("--initial", choices=["P", "Q"], default="P", help="initial helicity")
    p_c.add_argument("--method", choices=["matrix", "pathsum", "both"], default="matrix")
    p_c.add_argument("--cap", type=int, default=cb.DEFAULT_PATHSUM_CAP)
    p_c.add_argument("--emit", choices=["csv", "json", "svg"], default="csv")
    p_c.add_argument("--outdir", default=None)
    p_c.set_defaults(func=cmd_checkerboard)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CausetkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
