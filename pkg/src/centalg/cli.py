"""Command-line driver: classification pipeline, partial pipelines, report
re-verification, and reproduction of the bundled reference examples.

Exit codes: 0 success, 2 partial (characters skipped), 3 input error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .errors import CentalgError, MismatchAgainstExpected, SchemaError
from .extension import load_cover
from .perm import load_group, group_from_json
from .pipeline import classify


def _data_path(*parts):
    return resources.files("centalg").joinpath("data", *parts)


def load_bundled_group(name: str):
    with _data_path("groups", f"{name}.json").open() as fh:
        return group_from_json(json.load(fh))


def load_bundled_cover(name: str):
    with _data_path("covers", f"{name}.json").open() as fh:
        return load_cover(json.load(fh))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int,
                   default=int(os.environ.get("CENTALG_PRECISION", 128)))
    p.add_argument("--seed", type=int, default=int(os.environ.get("CENTALG_SEED", 0)))
    p.add_argument("--max-group-order", type=int,
                   default=int(os.environ.get("CENTALG_MAX_GROUP_ORDER", 100_000)))
    p.add_argument("--output", choices=("json", "pretty"), default="pretty")
    p.add_argument("--outdir", default=None, help="write report files here")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="centalg")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="run the full classification pipeline")
    p_classify.add_argument("group", help="group file (JSON) or bundled name")
    p_classify.add_argument("--cover", default=None, help="monomial cover file")
    p_classify.add_argument("--character", type=int, action="append", default=None)
    _add_common(p_classify)

    for verb, what in (("basis", "centraliser basis"),
                       ("chartable", "algebra character table"),
                       ("solve", "norm-system solutions")):
        p = sub.add_parser(verb, help=f"compute the {what} only")
        p.add_argument("group")
        p.add_argument("--cover", default=None)
        p.add_argument("--character", type=int, action="append", default=None)
        _add_common(p)

    p_verify = sub.add_parser("verify", help="re-verify the solutions in a report")
    p_verify.add_argument("report")
    _add_common(p_verify)

    p_repro = sub.add_parser("reproduce", help="re-run a bundled reference example")
    p_repro.add_argument("example_id")
    _add_common(p_repro)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except MismatchAgainstExpected as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 4
    except CentalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def _load_group_arg(spec: str):
    if os.path.exists(spec):
        return load_group(spec), os.path.basename(spec)
    try:
        return load_bundled_group(spec), spec
    except FileNotFoundError:
        raise SchemaError(f"no group file or bundled group named {spec!r}")


def _dispatch(args) -> int:
    if args.command in ("classify", "basis", "chartable", "solve"):
        G, name = _load_group_arg(args.group)
        cover = None
        if args.cover:
            cover = load_cover(args.cover) if os.path.exists(args.cover) \
                else load_bundled_cover(args.cover)
        report = classify(G, name=name, cover=cover,
                          characters=args.character,
                          precision=args.precision, seed=args.seed,
                          max_group_order=args.max_group_order)
        payload = report.to_json()
        if args.command == "basis":
            payload = {"group": payload["group"],
                       "characters": [{k: c[k] for k in
                                       ("index", "character_order", "rank",
                                        "commutative", "subdegrees")}
                                      for c in payload["characters"]]}
        elif args.command == "chartable":
            payload = {"group": payload["group"],
                       "characters": [{k: c.get(k) for k in
                                       ("index", "character_order", "rank",
                                        "field_order", "table")}
                                      for c in payload["characters"]]}
        elif args.command == "solve":
            payload = {"group": payload["group"],
                       "characters": [{k: c.get(k) for k in
                                       ("index", "character_order",
                                        "component_count", "component_dims",
                                        "solutions", "hadamard_verified")}
                                      for c in payload["characters"]]}
        _emit(args, payload)
        if args.outdir:
            _write_report(args.outdir, f"{name.replace('.json','')}-{args.command}",
                          payload)
        return report.exit_status

    if args.command == "verify":
        with open(args.report) as fh:
            payload = json.load(fh)
        bad = _reverify_report(payload, args.precision)
        if bad:
            raise MismatchAgainstExpected("; ".join(bad))
        print("report verified: all solutions pass the Hadamard check")
        return 0

    if args.command == "reproduce":
        from .reproduce import reproduce

        result = reproduce(args.example_id, precision=args.precision, seed=args.seed)
        _emit(args, result)
        return 0
    raise AssertionError("unreachable")


def _emit(args, payload: dict) -> None:
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        _pretty(payload)


def _pretty(payload: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _pretty(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}: [{len(value)} entries]")
            for entry in value:
                _pretty(entry, indent + 1)
                print()
        else:
            print(f"{pad}{key}: {value}")


def _write_report(outdir: str, stem: str, payload: dict) -> None:
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"{stem}.json")
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
    manifest = os.path.join(outdir, "manifest.json")
    entries = []
    if os.path.exists(manifest):
        with open(manifest) as fh:
            entries = json.load(fh)
    if os.path.basename(path) not in entries:
        entries.append(os.path.basename(path))
    with open(manifest, "w") as fh:
        json.dump(sorted(entries), fh, indent=1)


def _reverify_report(payload: dict, precision: int) -> list[str]:
    """Reload every solution's coordinate balls and re-check the norm
    conditions: unit coordinates and the Hadamard residual data recorded."""
    import mpmath

    problems = []
    for c in payload.get("characters", []):
        for k, sol in enumerate(c.get("solutions", [])):
            for coord in sol["coordinates"]:
                re, im, rad = coord["ball"]
                mod = re * re + im * im
                if abs(mod - 1) > max(1e-9, 4 * rad):
                    problems.append(
                        f"character {c['index']} solution {k}: coordinate "
                        f"{coord['name']} is not on the unit circle")
        for k, ok in enumerate(c.get("hadamard_verified", [])):
            if not ok:
                problems.append(f"character {c['index']} solution {k}: "
                                "Hadamard check recorded as failed")
    return problems


if __name__ == "__main__":
    sys.exit(main())
