"""hermext command line: class groups, coset representatives, Atkin-Lehner matrices, phi."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .classgroup import class_group, torsion_subgroup
from .extension import coset_representatives, theorem2_decomposition
from .fielddef import predicted_field, ramification_support
from .matgroup import scaled_from_json
from .orthobridge import DEFAULT_TOL, phi_mat
from .quadfield import field_params, is_squarefree
from .verify import SUITES, run_suites

CACHE_ENV = "HERMEXT_CACHE_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical JSON: fixed key order from the producers, no float noise in exact data."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


# -- input validation -------------------------------------------------------------


def check_m(m) -> int:
    if m is None:
        raise UsageError("missing -m")
    if m < 1 or not is_squarefree(m):
        raise UsageError(f"-m must be a squarefree positive integer, got {m}")
    return m


def check_n(n) -> int:
    if n is None:
        raise UsageError("missing -n")
    if n < 1:
        raise UsageError(f"-n must be a positive integer, got {n}")
    return n


def read_corpus(path: str | os.PathLike) -> list[tuple[int, int]]:
    """One ``m[,n]`` pair per line; ``#`` starts a comment; n defaults to 2."""
    pairs = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read corpus {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) > 2:
            raise UsageError(f"{path}:{lineno}: expected 'm[,n]', got {raw!r}")
        try:
            m = int(parts[0])
            n = int(parts[1]) if len(parts) == 2 else 2
        except ValueError:
            raise UsageError(f"{path}:{lineno}: non-integer field in {raw!r}") from None
        try:
            pairs.append((check_m(m), check_n(n)))
        except UsageError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return pairs


# -- on-disk class-group cache ----------------------------------------------------------


def cache_dir(arg: str | None) -> Path | None:
    d = arg or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cached_classgroup(m: int, directory: Path | None) -> dict:
    if directory is not None:
        path = directory / f"classgroup-{m}.json"
        try:
            data = json.loads(path.read_text())
            if data.get("version") == __version__ and data.get("m") == m:
                return data["classgroup"]
        except (OSError, ValueError, KeyError, AttributeError):
            pass
    result = class_group(field_params(m)).to_json()
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
        payload = {"version": __version__, "m": m, "classgroup": result}
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".classgroup-{m}.", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(payload))
        os.replace(tmp, path)
    return result


# -- commands ---------------------------------------------------------------------------


def cmd_classgroup(args) -> tuple[dict, int]:
    m = check_m(args.m)
    out = {"m": m, "disc": field_params(m).disc}
    out.update(cached_classgroup(m, cache_dir(args.cache)))
    return out, EXIT_OK


def cmd_torsion(args) -> tuple[dict, int]:
    m, n = check_m(args.m), check_n(args.n)
    G = class_group(field_params(m))
    tors = [G.classes[i].as_list() for i in torsion_subgroup(G, n)]
    return {"m": m, "n": n, "order": len(tors), "classes": tors}, EXIT_OK


def cmd_cosets(args) -> tuple[dict, int]:
    m, n = check_m(args.m), check_n(args.n)
    reps = coset_representatives(field_params(m), n)
    return {"m": m, "n": n, "representatives": [r.to_json() for r in reps]}, EXIT_OK


def cmd_atkin(args) -> tuple[dict, int]:
    m = check_m(args.m)
    reps = theorem2_decomposition(field_params(m))
    return {"m": m, "matrices": [r.to_json() for r in reps]}, EXIT_OK


def cmd_phi(args) -> tuple[dict, int]:
    if args.input is None:
        raise UsageError("phi needs an input file (use - for stdin)")
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not JSON: {exc}") from None
    try:
        M = scaled_from_json(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if M.n != 2:
        raise UsageError(f"field 'n' must be 2 for phi, got {M.n}")
    P = phi_mat(M)
    out = {
        "phi": P.to_json(),
        "orthogonal": P.is_orthogonal(),
        "integral": P.is_integral(),
        "discriminant_kernel": P.in_discriminant_kernel(),
    }
    return out, EXIT_OK if out["orthogonal"] else EXIT_FAIL


def cmd_field(args) -> tuple[dict, int]:
    m, n = check_m(args.m), check_n(args.n)
    F = field_params(m)
    desc = predicted_field(F, n)
    out = {"m": m, "n": n, "field": str(desc)}
    if desc.unknown:
        out.update(desc.to_json())
        return out, EXIT_OK
    rep = ramification_support(desc, F, n)
    out.update(rep.to_json())
    return out, EXIT_OK if rep.ok else EXIT_FAIL


def _verify_job(job):
    m, n, suite, tol, timing = job
    return run_suites(m, n, suite, tol).to_json(timing)


def cmd_verify(args) -> tuple[dict, int]:
    if args.corpus:
        pairs = read_corpus(args.corpus)
    else:
        pairs = [(check_m(args.m), check_n(args.n))]
    if args.tolerance <= 0:
        raise UsageError("--tolerance must be positive")
    jobs = [(m, n, args.suite, args.tolerance, args.timing) for m, n in pairs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_job, jobs))
    else:
        reports = [_verify_job(j) for j in jobs]
    ok = all(r["ok"] for r in reports)
    out = {"suite": args.suite, "ok": ok, "reports": reports}
    return out, EXIT_OK if ok else EXIT_FAIL


# -- argument parsing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=int, help="squarefree m with K = Q(sqrt(-m))")
    common.add_argument("-n", type=int, help="degree n")
    common.add_argument("--json", action="store_true", help="emit JSON (the default output format)")
    common.add_argument("--cache", help=f"cache directory (overrides ${CACHE_ENV})")

    p = argparse.ArgumentParser(prog="hermext", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classgroup", parents=[common], help="class group of K").set_defaults(fn=cmd_classgroup)
    sub.add_parser("torsion", parents=[common], help="n-torsion of the class group").set_defaults(fn=cmd_torsion)
    sub.add_parser("cosets", parents=[common], help="coset representatives, one per n-torsion class").set_defaults(fn=cmd_cosets)
    sub.add_parser("atkin", parents=[common], help="Atkin-Lehner matrices W_d of degree 2").set_defaults(fn=cmd_atkin)
    sub.add_parser("field", parents=[common], help="predicted field of definition").set_defaults(fn=cmd_field)
    ph = sub.add_parser("phi", parents=[common], help="orthogonal image of a degree-2 ScaledMatrix")
    ph.add_argument("input", nargs="?", help="ScaledMatrix JSON file, or - for stdin")
    ph.set_defaults(fn=cmd_phi)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--corpus", help="file with one m[,n] per line")
    v.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    v.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    v.add_argument("--jobs", type=int, default=1, help="worker processes for corpus runs")
    v.add_argument("--timing", action="store_true", help="include per-check timings (not byte-stable)")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.fn(args)
    except UsageError as exc:
        print(f"hermext {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
