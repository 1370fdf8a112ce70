"""Command-line driver: build and persist atlases, run suites, classify, fixed points.

Exit codes: 0 everything passed, 1 a verification failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .atlas import PI, Atlas, ChartIndex
from .errors import SuperGrassError
from .galois import classify_real_structures
from .persistence import canonical_json, load_atlas, save_atlas
from .real_structures import STRUCTURE_NAMES, fixed_relations, match_quaternionic, structure_by_name
from .suites import SUITES, ConfigError, VerificationConfig, run, text_summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _add_target(p: argparse.ArgumentParser):
    g = p.add_argument_group("target")
    g.add_argument("--flavor", choices=[PI, "plain"], default=PI)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--m", type=int, default=None, help="even size of a plain super Grassmannian")
    g.add_argument("--l", type=int, default=0, help="odd block size of a plain super Grassmannian")
    g.add_argument("--max-n", type=int, default=6, help="size cap (default 6)")


def _add_run(p: argparse.ArgumentParser):
    g = p.add_argument_group("verification")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--samples", type=int, default=50, help="random samples for normalization")
    g.add_argument("--jacobi-triples", type=int, default=100)
    g.add_argument("--generic-alpha", action=argparse.BooleanOptionalAction, default=True,
                   help="also run the generic-alpha lifting checks")
    g.add_argument("--jobs", type=int, default=1, help="worker processes")
    g.add_argument("--atlas", dest="atlas_path", default=None,
                   help="verify a saved atlas instead of building one")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supergrass",
                                     description="Exact chart algebra on super Grassmannians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_atlas = sub.add_parser("atlas", help="build, save or load an atlas")
    atlas_sub = p_atlas.add_subparsers(dest="action", required=True)
    p = atlas_sub.add_parser("build", help="build an atlas and print a summary")
    _add_target(p)
    p.add_argument("--out", default=None, help="also save it to this path")
    p = atlas_sub.add_parser("save", help="build an atlas and save it")
    _add_target(p)
    p.add_argument("path")
    p = atlas_sub.add_parser("load", help="load a saved atlas and print a summary")
    p.add_argument("path")
    p.add_argument("--check", action="store_true", help="run the cocycle suite on it")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", metavar="suite",
                   help=f"suites to run (default all): {', '.join(SUITES)}")
    _add_target(p)
    _add_run(p)
    p.add_argument("--json", dest="json_path", default=None, help="write the JSON report here")

    p = sub.add_parser("report", help="run suites and write text and JSON reports")
    p.add_argument("--json", dest="json_path", required=True)
    p.add_argument("--text", dest="text_path", default=None)
    p.add_argument("--suites", nargs="+", default=None, metavar="suite")
    _add_target(p)
    _add_run(p)

    p = sub.add_parser("classify", help="classes of real structures on PiGr_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--json", dest="json_path", default=None)

    p = sub.add_parser("fixed-points", help="fixed relations of a real structure")
    p.add_argument("--structure", choices=STRUCTURE_NAMES, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--chart", default=None, help="even chart index, e.g. 1,2 (default all invariant charts)")
    p.add_argument("--force", action="store_true", help="renormalize non-affine charts")
    p.add_argument("--json", dest="json_path", default=None)
    return parser


# ---------------------------------------------------------------------------


def _writable(path: str) -> str:
    folder = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(folder) or not os.access(folder, os.W_OK):
        raise ConfigError(f"cannot write to {path}")
    if os.path.isdir(path):
        raise ConfigError(f"{path} is a directory")
    return path


def _write(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _sizes(args, n=None) -> None:
    n = args.n if n is None else n
    if n > args.max_n:
        raise ConfigError(f"size {n} exceeds the cap --max-n={args.max_n}")
    if not 0 < args.k < n:
        raise ConfigError(f"need 0 < k < n, got n={n}, k={args.k}")


def _config(args, suites) -> tuple[VerificationConfig, Atlas | None]:
    atlas = None
    n, k, flavor, m, l = args.n, args.k, args.flavor, args.m, args.l
    if args.atlas_path:
        atlas = load_atlas(args.atlas_path)
        if atlas.graded or atlas.table.doubled:
            raise ConfigError("verification needs a natural (non-graded, non-doubled) atlas")
        n, k, flavor = atlas.n, atlas.k, atlas.flavor
        m, l = (None, 0) if flavor == PI else (atlas.m, atlas.l)
    cfg = VerificationConfig(n=n, k=k, flavor=flavor, m=m, l=l,
                             suites=list(suites) if suites else list(SUITES),
                             seed=args.seed, generic_alpha=args.generic_alpha,
                             max_n=args.max_n, samples=args.samples,
                             jacobi_triples=args.jacobi_triples, jobs=args.jobs)
    return cfg.validate(), atlas


def _summary(atlas: Atlas) -> str:
    t = atlas.table
    return (f"{atlas.name}: {len(atlas.indices)} charts, {len(atlas.pairs())} ordered pairs, "
            f"chart dimension {len(atlas.chart(atlas.indices[0]).coordinates)} "
            f"({len(t.even)} even / {len(t.odd)} odd variables in the table)"
            + (", graded" if atlas.graded else "") + (", doubled" if t.doubled else "") + "\n")


def _build(args) -> Atlas:
    if args.flavor == PI:
        cfg = VerificationConfig(n=args.n, k=args.k, max_n=args.max_n, suites=[])
    else:
        cfg = VerificationConfig(n=args.n, k=args.k, flavor="plain", m=args.m, l=args.l,
                                 max_n=args.max_n, suites=[])
    return cfg.validate().atlas()


def cmd_atlas(args, out) -> int:
    if args.action == "load":
        atlas = load_atlas(args.path)
        out.write(_summary(atlas))
        if args.check:
            cfg = VerificationConfig(n=atlas.n, k=atlas.k, flavor=atlas.flavor,
                                     m=None if atlas.flavor == PI else atlas.m,
                                     l=0 if atlas.flavor == PI else atlas.l,
                                     suites=["cocycle"], max_n=max(atlas.n, atlas.m, 6))
            report = run(cfg, atlas)
            out.write(text_summary(report))
            return EXIT_OK if report["passed"] else EXIT_FAIL
        return EXIT_OK
    path = args.path if args.action == "save" else args.out
    if path:
        _writable(path)
    atlas = _build(args)
    out.write(_summary(atlas))
    if path:
        save_atlas(atlas, path)
        out.write(f"saved to {path}\n")
    return EXIT_OK


def _run_report(args, suites, out, json_path, text_path=None) -> int:
    for p in (json_path, text_path):
        if p:
            _writable(p)
    cfg, atlas = _config(args, suites)
    report = run(cfg, atlas)
    text = text_summary(report)
    out.write(text)
    if json_path:
        _write(json_path, canonical_json(report))
    if text_path:
        _write(text_path, text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_verify(args, out) -> int:
    return _run_report(args, args.suites, out, args.json_path)


def cmd_report(args, out) -> int:
    return _run_report(args, args.suites, out, args.json_path, args.text_path)


def cmd_classify(args, out) -> int:
    _sizes(args)
    if args.json_path:
        _writable(args.json_path)
    rep = classify_real_structures(args.n, args.k)
    out.write(f"PiGr({args.n},{args.k}): {rep.count} classes of real structures "
              f"in {rep.group_shape}\n")
    for c in rep.to_json()["classes"]:
        out.write(f"  {c['label']:10} delta sign {c['delta_sign']:+d}\n")
    if args.json_path:
        _write(args.json_path, canonical_json(rep.to_json()))
    return EXIT_OK


def _parse_chart(text: str, n: int, k: int) -> ChartIndex:
    try:
        even = tuple(sorted(int(s) for s in text.split(",")))
    except ValueError:
        raise ConfigError(f"bad chart index {text!r}; expected e.g. 1,2") from None
    if len(even) != k or len(set(even)) != k or not all(1 <= i <= n for i in even):
        raise ConfigError(f"chart index {text!r} must list {k} distinct rows in 1..{n}")
    return ChartIndex(PI, even, even)


def cmd_fixed_points(args, out) -> int:
    _sizes(args)
    if args.json_path:
        _writable(args.json_path)
    cfg = VerificationConfig(n=args.n, k=args.k, max_n=args.max_n, suites=[]).validate()
    mu = structure_by_name(cfg.atlas(), args.structure)
    charts = [_parse_chart(args.chart, args.n, args.k)] if args.chart else mu.invariant_charts()
    results = []
    for chart in charts:
        fr = fixed_relations(mu, chart, force=args.force)
        data = fr.to_json()
        data["model"] = match_quaternionic(fr)
        results.append(data)
        dim = "" if fr.dimension is None else f", real dimension {fr.dimension}"
        out.write(f"{args.structure} on chart {chart}: {fr.status}{dim}, model {data['model']}\n")
        if fr.diagnostic:
            out.write(f"    {fr.diagnostic}\n")
        for coord, f in fr.conj_map.items():
            out.write(f"    {coord} = {f}\n")
    if not charts:
        out.write(f"{args.structure}: no chart is invariant under the base involution\n")
    if args.json_path:
        _write(args.json_path, canonical_json({"structure": args.structure,
                                               "n": args.n, "k": args.k, "charts": results}))
    return EXIT_OK


COMMANDS = {"atlas": cmd_atlas, "verify": cmd_verify, "report": cmd_report,
            "classify": cmd_classify, "fixed-points": cmd_fixed_points}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (SuperGrassError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
