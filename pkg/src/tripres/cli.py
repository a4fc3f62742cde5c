"""Command-line interface.

Every subcommand prints ``key: value`` lines, or one JSON object with
``--json``.  Exit status is 0 on success, 1 when a check fails and 2 on usage
or input errors.  A path written ``@name`` refers to a bundled fixture, e.g.
``@hughes9.plane``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib.resources import files
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .correspondence import estimated_score, read_correspondence
from .groupalg import abelianization
from .incidence import (
    InvalidPlaneError,
    NotASubplaneError,
    NotBaerError,
    PlaneFormatError,
    format_plane,
    is_baer_subplane,
    read_plane,
    restrict_to_subplane,
)
from .presentation import (
    PresentationError,
    TrianglePresentation,
    VerdictKind,
    check_parity,
    export_group_presentation,
    format_triples,
    orbit_decomposition,
    read_triples,
    restrict,
    verify_presentation,
)
from .scab import NotFullError, build_scab, residue, residue_plane_iso, verify_generalized_triangle
from .search import (
    SearchConfig,
    SearchState,
    Variant,
    correlation_census,
    random_scores,
    run_search,
    search_from_correlations,
    write_checkpoint,
    write_trace,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class CheckFailed(Exception):
    """Raised by a handler after printing its report when a check fails."""


def resolve(path: str) -> Path:
    if path.startswith("@"):
        return Path(str(files("tripres") / "fixtures" / path[1:]))
    return Path(path)


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def emit(report: dict[str, Any], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=False))
        return
    for k, v in report.items():
        if isinstance(v, (list, tuple)):
            v = ",".join(str(x) for x in v)
        elif isinstance(v, float):
            v = f"{v:.2f}"
        elif isinstance(v, dict):
            v = json.dumps(v)
        print(f"{k}: {v}")


def _load(args, *, lam: bool = False, tri: bool = False):
    plane = read_plane(resolve(args.plane))
    out = [plane]
    if lam:
        out.append(read_correspondence(resolve(args.lam), plane))
    if tri:
        out.append(read_triples(resolve(args.tri)))
    return out


# -- handlers ------------------------------------------------------------------


def cmd_verify_plane(args) -> dict:
    try:
        plane = read_plane(resolve(args.plane))
    except InvalidPlaneError as exc:
        emit({"valid": False, "error": str(exc)}, args.json)
        raise CheckFailed
    return {"valid": True, "order": plane.order, "points": plane.n}


def cmd_verify_presentation(args) -> dict:
    plane, lam, ts = _load(args, lam=True, tri=True)
    v = verify_presentation(plane, lam, ts)
    report: dict[str, Any] = {"verdict": v.kind.value, "triples": v.size}
    if v.kind is VerdictKind.INVALID:
        report.update(reason=v.reason, triple=list(v.triple or ()))
        emit(report, args.json)
        raise CheckFailed
    orbits, loops = orbit_decomposition(ts)
    report.update(orbits=orbits, loops=loops)
    return report


def cmd_score(args) -> dict:
    plane, lam = _load(args, lam=True)
    cover = estimated_score(lam, restart=not args.no_restart)
    return {
        "status": cover.status.value,
        "score": cover.score,
        "uncovered": len(cover.uncovered),
        "edges": (plane.order + 1) * plane.n,
    }


def cmd_census(args) -> dict:
    (plane,) = _load(args)
    rows = correlation_census(plane, limit=args.limit)
    table = [
        {"a": r.a, "b": r.b, "exact": r.exact, "count": r.count,
         "mean_estimate": round(r.mean_estimate, 4), "failures": r.failures}
        for r in rows
    ]
    if not args.json:
        for r in table:
            print(f"class: a={r['a']} b={r['b']} exact={r['exact']} count={r['count']} "
                  f"mean_estimate={r['mean_estimate']:.2f} failures={r['failures']}")
    return {"correlations": sum(r.count for r in rows), "classes": len(rows),
            **({"table": table} if args.json else {})}


def cmd_search(args) -> dict:
    (plane,) = _load(args)
    cfg = SearchConfig(
        target=args.target if args.target is not None else (plane.order + 1) * plane.n,
        variant=Variant(args.variant),
        worst_points=args.worst_points,
        max_steps=args.max_steps,
        restart_after_stall=args.stall,
        rng_seed=args.seed,
        badness_mode=args.badness,
    )
    if args.start:
        start = read_correspondence(resolve(args.start), plane)
        state = SearchState.start(start, cfg.restart)
        out = run_search(plane, start, cfg, state)
        if args.checkpoint:
            write_checkpoint(args.checkpoint, state)
    else:
        out = search_from_correlations(plane, cfg, attempts=args.attempts)
    if args.trace:
        write_trace(args.trace, out.trace)
    report: dict[str, Any] = {"outcome": out.outcome.value, "score": out.score, "steps": out.steps}
    if out.reason:
        report["reason"] = out.reason
    if args.out:
        Path(args.out).write_text(" ".join(map(str, out.lam.image)) + "\n")
        report["lambda_file"] = args.out
    if out.presentation is not None and args.out_tri:
        Path(args.out_tri).write_text(format_triples(out.presentation))
        report["triples_file"] = args.out_tri
    return report


def cmd_restrict_baer(args) -> dict:
    plane, lam, ts = _load(args, lam=True, tri=True)
    emb = is_baer_subplane(plane, args.points, args.lines)
    lam0, t0 = restrict(TrianglePresentation(plane, lam, ts), emb)
    _, pidx, lidx = restrict_to_subplane(emb)
    report: dict[str, Any] = {
        "sub_order": emb.sub_order,
        "verdict": "FULL",
        "triples": t0.size,
        "point_index": list(pidx),
        "line_index": list(lidx),
    }
    if args.out_lambda:
        Path(args.out_lambda).write_text(" ".join(map(str, lam0.image)) + "\n")
    if args.out_tri:
        Path(args.out_tri).write_text(format_triples(t0))
    if args.out_plane:
        Path(args.out_plane).write_text(format_plane(t0.plane))
    return report


def cmd_abelianize(args) -> dict:
    ts = read_triples(resolve(args.tri))
    n = args.generators if args.generators is not None else 1 + max((max(t) for t in ts), default=-1)
    dec = abelianization(ts, n)
    return {
        "generators": n,
        "invariant_factors": list(dec.invariant_factors),
        "free_rank": dec.free_rank,
        "group": str(dec),
    }


def cmd_check_parity(args) -> dict:
    plane, ts = _load(args, tri=True)
    v = check_parity(ts, args.lines, plane)
    report: dict[str, Any] = {"holds": v.holds, "marked_points": len(v.marked)}
    if not v.holds:
        report["counterexample"] = list(v.counterexample or ())
        emit(report, args.json)
        raise CheckFailed
    return report


def cmd_scab_check(args) -> dict:
    plane, lam, ts = _load(args, lam=True, tri=True)
    cx = build_scab(TrianglePresentation(plane, lam, ts))
    report: dict[str, Any] = {"chambers": len(cx.chambers), "edges": len(cx.edges)}
    ok = True
    for v in cx.vertices:
        g = residue(cx, v)
        tri = verify_generalized_triangle(g, plane.order)
        iso = residue_plane_iso(g, plane) is not None if tri and not args.skip_iso else None
        report[f"residue_{v}"] = "generalized-triangle" if tri else "not-a-plane"
        if iso is not None:
            report[f"residue_{v}_isomorphic"] = iso
        ok = ok and tri and iso is not False
    if not ok:
        emit(report, args.json)
        raise CheckFailed
    return report


def cmd_stats_random(args) -> dict:
    (plane,) = _load(args)
    scores, failed = random_scores(plane, args.samples, args.seed)
    return {
        "samples": args.samples,
        "seed": args.seed,
        "mean": float(np.mean(scores)) if len(scores) else 0.0,
        "stddev": float(np.std(scores, ddof=1)) if len(scores) > 1 else 0.0,
        "min": int(scores.min()) if len(scores) else 0,
        "max": int(scores.max()) if len(scores) else 0,
        "failures": int(failed.sum()),
    }


def cmd_export_gap(args) -> dict | None:
    ts = read_triples(resolve(args.tri))
    n = args.generators if args.generators is not None else 1 + max((max(t) for t in ts), default=-1)
    text = export_group_presentation(ts, n, args.format)
    if args.out:
        Path(args.out).write_text(text)
        return {"generators": n, "relators": sum(orbit_decomposition(ts)), "file": args.out}
    sys.stdout.write(text)
    return None


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="tripres", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("verify-plane", cmd_verify_plane, "check the projective plane axioms")
    sp.add_argument("plane")

    sp = add("verify-presentation", cmd_verify_presentation, "classify a triple file as FULL, PARTIAL or INVALID")
    sp.add_argument("plane")
    sp.add_argument("lam", metavar="lambda")
    sp.add_argument("tri")

    sp = add("score", cmd_score, "estimated score of a correspondence")
    sp.add_argument("plane")
    sp.add_argument("lam", metavar="lambda")
    sp.add_argument("--no-restart", action="store_true",
                    help="continue the edge scan after a commit instead of starting over")

    sp = add("census-correlations", cmd_census, "group correlations by (a, b) with exact and estimated scores")
    sp.add_argument("plane")
    sp.add_argument("--limit", type=int, default=None)

    sp = add("search", cmd_search, "swap local search for a full triangle presentation")
    sp.add_argument("plane")
    sp.add_argument("--start", help="starting correspondence (default: a correlation chosen by --seed)")
    sp.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.FULL_SCAN.value)
    sp.add_argument("--worst-points", type=int, default=5)
    sp.add_argument("--max-steps", type=int, default=1000)
    sp.add_argument("--stall", type=int, default=100, help="steps without improvement before giving up")
    sp.add_argument("--attempts", type=int, default=1, help="restarts from correlations")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--badness", choices=["both", "origin"], default="both")
    sp.add_argument("--target", type=int, default=None)
    sp.add_argument("--trace", help="write step,score CSV")
    sp.add_argument("--checkpoint", help="write the final correspondence and visited count")
    sp.add_argument("--out", help="write the best correspondence")
    sp.add_argument("--out-tri", help="write the presentation when found")

    sp = add("restrict-baer", cmd_restrict_baer, "restrict a presentation to a Baer subplane")
    sp.add_argument("plane")
    sp.add_argument("lam", metavar="lambda")
    sp.add_argument("tri")
    sp.add_argument("--points", type=int_list, required=True)
    sp.add_argument("--lines", type=int_list, required=True)
    sp.add_argument("--out-lambda")
    sp.add_argument("--out-tri")
    sp.add_argument("--out-plane")

    sp = add("abelianize", cmd_abelianize, "abelian invariants of the presented group")
    sp.add_argument("tri")
    sp.add_argument("--generators", type=int, default=None)

    sp = add("check-parity", cmd_check_parity, "does every triple meet the union of lines an odd number of times")
    sp.add_argument("plane")
    sp.add_argument("tri")
    sp.add_argument("--lines", type=int_list, required=True)

    sp = add("scab-check", cmd_scab_check, "check the residues of the chamber complex")
    sp.add_argument("plane")
    sp.add_argument("lam", metavar="lambda")
    sp.add_argument("tri")
    sp.add_argument("--skip-iso", action="store_true", help="skip the isomorphism search")

    sp = add("stats-random", cmd_stats_random, "estimated scores of random correspondences")
    sp.add_argument("plane")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("export-gap", cmd_export_gap, "write the group presentation")
    sp.add_argument("tri")
    sp.add_argument("--generators", type=int, default=None)
    sp.add_argument("--format", choices=["gap", "generic"], default="gap")
    sp.add_argument("--out")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = args.func(args)
    except CheckFailed:
        return EXIT_INVALID
    except (PresentationError, NotASubplaneError, NotBaerError, NotFullError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, PlaneFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        emit(report, args.json)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
