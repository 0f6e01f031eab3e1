"""Command-line front door and report serialization.

Subcommands: check (run every verifier on a space/map pair), bj (single
orthogonality query), dual (dual norm spec or a dual-norm value), detect
(inner-product detection), catalog (full expectation sweep), plot (unit and
dual ball figure for two-dimensional spaces).

Spaces and maps are builtin names, inline JSON, or paths to JSON files. Exit
codes: 0 all expectations/conclusions hold, 1 a violation or expectation
mismatch was found (details in the report), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import catalog as cat
from . import norms as nr
from .embedding import (
    EmbeddingError,
    EmbeddingSpec,
    encode_vector,
    parallelogram_defect,
    parallelogram_defect_at,
)
from .orthogonality import bj_orthogonal
from .plotting import render_plot
from .simplex import LPError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_INPUT = 2

SCHEMA = "normlab.report/1"


class InputError(Exception):
    pass


def _load_json_source(text: str, what: str):
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed inline JSON for {what}: {exc}") from None
    if os.path.exists(text):
        try:
            with open(text) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {what} file {text!r}: {exc}") from None
    return None


def resolve_space(text: str):
    """-> (NormSpec, CatalogEntry | None)."""
    data = _load_json_source(text, "--space")
    if data is not None:
        try:
            return nr.spec_from_dict(data), None
        except nr.NormSpecError as exc:
            raise InputError(f"bad space spec: {exc}") from None
    try:
        entry = cat.builtin(text)
        return entry.space, entry
    except KeyError:
        raise InputError(
            f"--space {text!r} is neither inline JSON, an existing file, nor a catalog name"
        ) from None


def resolve_map(text: str | None, dim: int, entry):
    if text is None:
        if entry is not None:
            return entry.mapping
        return EmbeddingSpec.identity(dim)
    if text.strip() == "identity":
        return EmbeddingSpec.identity(dim)
    data = _load_json_source(text, "--map")
    if data is not None:
        try:
            emb = EmbeddingSpec.from_dict(data)
        except (EmbeddingError, nr.NormSpecError) as exc:
            raise InputError(f"bad map spec: {exc}") from None
    else:
        try:
            emb = cat.builtin(text).mapping
        except KeyError:
            raise InputError(
                f"--map {text!r} is neither 'identity', inline JSON, a file, nor a catalog name"
            ) from None
    if emb.dim != dim:
        raise InputError(f"map dimension {emb.dim} does not match space dimension {dim}")
    return emb


def parse_vector(text: str) -> np.ndarray:
    """Comma-separated reals, or [re,im] pairs for complex entries."""
    s = text.strip()
    try:
        if s.startswith("["):
            data = json.loads(f"[{s}]")
            return np.array([complex(p[0], p[1]) for p in data])
        return np.array([float(tok) for tok in s.split(",") if tok.strip() != ""])
    except (ValueError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse vector {text!r}: {exc}") from None


def _payload(command: str, config: dict, body: dict, exit_code: int) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "config": config,
        **body,
        "exit_code": exit_code,
    }


def write_json(payload: dict, path: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def _write_csv(rows: list, header: list, path: str):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    space, entry = resolve_space(args.space)
    mapping = resolve_map(args.map, space.dim, entry)
    if entry is not None and not np.array_equal(mapping.matrix, entry.mapping.matrix):
        entry = None  # custom map: no expectation table applies
    work = entry or cat.CatalogEntry(name="custom", space=space, mapping=mapping, expected={})
    outcome = cat.evaluate_entry(work, samples=args.samples, seed=args.seed,
                                 tol_sampled=args.tol, keep_reports=True)
    code = EXIT_OK if outcome.match else EXIT_VIOLATION
    config = {
        "space": space.to_dict(), "map": mapping.to_dict(),
        "samples": args.samples, "seed": args.seed,
        "tol_sampled": args.tol, "entry": work.name,
    }
    payload = _payload("check", config, {"result": outcome.to_dict()}, code)
    text = write_json(payload, args.json)
    if args.csv:
        rows = [[k, outcome.computed.get(k), outcome.expected.get(k, "")]
                for k in sorted(set(outcome.computed) | set(outcome.expected))]
        _write_csv(rows, ["check", "computed", "expected"], args.csv)
    if not args.json:
        print(text)
    else:
        status = "ok" if code == EXIT_OK else "VIOLATION"
        print(f"{work.name}: {status}; mismatches={outcome.mismatches} "
              f"violations={outcome.violations} -> {args.json}")
    return code


def cmd_bj(args) -> int:
    space, _ = resolve_space(args.space)
    x = parse_vector(args.x)
    y = parse_vector(args.y)
    try:
        res = bj_orthogonal(space, x, y, tol=args.tol)
    except nr.DimensionMismatch as exc:
        raise InputError(str(exc)) from None
    body = {
        "result": {
            "orthogonal": bool(res.orthogonal),
            "min_value": res.min_value,
            "witness_lambda": encode_vector(np.atleast_1d(res.witness)),
            "margin": res.margin,
            "certified": bool(res.certified),
            "boundary": bool(res.boundary),
            "base_norm": res.base_norm,
        }
    }
    config = {"space": space.to_dict(), "x": encode_vector(x), "y": encode_vector(y),
              "tol": args.tol}
    write_json(_payload("bj", config, body, EXIT_OK), args.json)
    verdict = "orthogonal" if res.orthogonal else "not orthogonal"
    print(f"{verdict}: min ||x + t y|| = {res.min_value:.12g} at t = {res.witness}, "
          f"||x|| = {res.base_norm:.12g}, margin {res.margin:.3e}"
          f"{' (certified)' if res.certified else ''}")
    return EXIT_OK


def cmd_dual(args) -> int:
    space, _ = resolve_space(args.space)
    d = nr.dual(space)
    if args.vector is not None:
        f = parse_vector(args.vector)
        try:
            val = nr.norm_eval(d, f)
        except nr.NormSpecError as exc:
            raise InputError(str(exc)) from None
        config = {"space": space.to_dict(), "vector": encode_vector(f)}
        write_json(_payload("dual", config, {"result": {"dual_norm": val}}, EXIT_OK), args.json)
        print(f"{val:.12g}")
    else:
        config = {"space": space.to_dict()}
        write_json(_payload("dual", config, {"result": {"dual_spec": d.to_dict()}}, EXIT_OK),
                   args.json)
        print(nr.spec_to_json(d))
    return EXIT_OK


def cmd_detect(args) -> int:
    space, _ = resolve_space(args.space)
    defect, pair = parallelogram_defect(space, samples=args.samples, seed=args.seed)
    tol = args.tol
    canonical = None
    if space.dim <= 8:
        eye = np.eye(space.dim)
        for i in range(space.dim):
            for j in range(i + 1, space.dim):
                x = eye[i] / nr.norm_eval(space, eye[i])
                y = eye[j] / nr.norm_eval(space, eye[j])
                d = parallelogram_defect_at(space, x, y)
                if d > tol:
                    canonical = (d, x, y)
                    break
            if canonical:
                break
    hilbert = defect <= tol
    if hilbert:
        msg = f"inner-product norm: max parallelogram defect {defect:.3e} over probes and samples"
    elif canonical is not None:
        d, x, y = canonical
        msg = (f"not inner-product: parallelogram defect {d:.12g} at "
               f"({np.round(x, 12).tolist()}, {np.round(y, 12).tolist()})")
    else:
        msg = (f"not inner-product: parallelogram defect {defect:.12g} at sampled pair")
    body = {"result": {
        "inner_product": bool(hilbert),
        "max_defect": defect,
        "witness": [encode_vector(pair[0]), encode_vector(pair[1])],
    }}
    config = {"space": space.to_dict(), "samples": args.samples, "seed": args.seed, "tol": tol}
    write_json(_payload("detect", config, body, EXIT_OK), args.json)
    print(msg)
    return EXIT_OK


def cmd_catalog(args) -> int:
    report = cat.run_all(seed=args.seed, samples=args.samples, instances=args.instances,
                         instance_samples=args.instance_samples)
    code = EXIT_OK if report.all_match else EXIT_VIOLATION
    config = {"seed": args.seed, "samples": args.samples, "instances": args.instances,
              "instance_samples": args.instance_samples}
    payload = _payload("catalog", config, {"result": report.to_dict()}, code)
    write_json(payload, args.json)
    if args.csv:
        rows = [[o.name, o.match, ";".join(o.mismatches), ";".join(o.violations)]
                for o in report.outcomes]
        _write_csv(rows, ["entry", "match", "mismatches", "violations"], args.csv)
    n_bad = sum(not o.match for o in report.outcomes)
    for o in report.outcomes:
        if not o.match:
            print(f"MISMATCH {o.name}: {o.mismatches or o.violations}")
    print(f"catalog: {len(report.outcomes)} entries, {n_bad} mismatches "
          f"({'ok' if code == EXIT_OK else 'FAIL'})")
    return code


def cmd_plot(args) -> int:
    space, entry = resolve_space(args.space)
    if space.dim != 2:
        raise InputError("plot requires a two-dimensional space")
    out = args.out or "ball.svg"
    title = entry.name if entry is not None else "unit and dual balls"
    fig_path, csv_path = render_plot(space, out, title=title, fan=args.fan,
                                     resolution=args.resolution)
    print(f"wrote {fig_path} and {csv_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normlab",
        description="Laboratory for finite-dimensional normed spaces: "
                    "orthogonality, dual norms, and inner-product detection "
                    "for maps of a space into its dual.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space(p, required=True):
        p.add_argument("--space", required=required,
                       help="builtin name (e.g. sz3, euclid(3)), inline JSON, or JSON file")

    def add_common(p):
        p.add_argument("--samples", type=int, default=10_000, help="sample budget (default 10000)")
        p.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="decision tolerance for sampled checks (default 1e-6)")
        p.add_argument("--json", metavar="PATH", default=None, help="write the JSON report here")

    p = sub.add_parser("check", help="run every verifier on a space/map pair")
    add_space(p)
    p.add_argument("--map", default=None,
                   help="'identity', builtin name, inline JSON, or JSON file "
                        "(defaults to the builtin's own map)")
    add_common(p)
    p.add_argument("--csv", metavar="PATH", default=None, help="write a delimited verdict summary")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("bj", help="decide Birkhoff-James orthogonality of x and y")
    add_space(p)
    p.add_argument("--x", required=True, help="vector: comma-separated reals or [re,im] pairs")
    p.add_argument("--y", required=True, help="vector: comma-separated reals or [re,im] pairs")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", metavar="PATH", default=None)
    p.set_defaults(fn=cmd_bj)

    p = sub.add_parser("dual", help="dual norm spec, or the dual norm of --vector")
    add_space(p)
    p.add_argument("--vector", default=None)
    p.add_argument("--json", metavar="PATH", default=None)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("detect", help="is the norm an inner-product norm?")
    add_space(p)
    add_common(p)
    p.set_defaults(fn=cmd_detect)
    p.set_defaults(tol=1e-9)

    p = sub.add_parser("catalog", help="run every builtin plus random instances")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--instance-samples", type=int, default=400)
    p.add_argument("--json", metavar="PATH", default=None)
    p.add_argument("--csv", metavar="PATH", default=None)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("plot", help="render unit/dual balls and the orthogonality fan (dim 2)")
    add_space(p)
    p.add_argument("--out", default=None, help="output figure path (SVG by default)")
    p.add_argument("--fan", type=int, default=12)
    p.add_argument("--resolution", type=int, default=720)
    p.set_defaults(fn=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (nr.NormSpecError, EmbeddingError, LPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
