"""``certify`` command line tool.

    certify invariants|certify|verify-bounds|scan-main-constants [options] INPUT...

Per-knot results go out as JSON lines in input order.  Exit status: 0 when
everything ran, 2 when some knots failed to process, 3 when verify-bounds
found a violated inequality.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import certify as cf
from .bounds import battery
from .codec import CorpusError, CorpusRecord, gauss_to_pd, parse_corpus_lines, parse_dt, parse_gauss, parse_pd
from .diagram import build_diagram, is_reduced
from .errors import KnotCertError, ResourceLimit, ViolationFound
from .interval import DEFAULT_EPS, GammaContext
from .invariants import invariant_bundle
from .twist import twist_regions

EXIT_OK, EXIT_PARTIAL, EXIT_VIOLATION = 0, 2, 3

CRITERION_ALIASES = {
    "thm-i": cf.THM_I,
    "thm-ii": cf.THM_II,
    "density": cf.DENSITY,
    "crossing": cf.CROSSING,
    "main": cf.MAIN,
    "alt": cf.ALT,
    "alt-coherent": cf.ALT_COHERENT,
    "det": cf.DET_BOUND,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    fmt: str = "jsonl"
    gamma_eps: Fraction = DEFAULT_EPS
    max_crossings: int = 200
    jobs: int = 1
    criteria: tuple[str, ...] = cf.CRITERIA
    out: str | None = None
    timestamp: bool = True
    with_det: bool = False

    def __post_init__(self):
        if self.max_crossings <= 0 or self.jobs <= 0 or self.gamma_eps <= 0:
            raise ValueError("limits must be positive")


# ------------------------------------------------------------------ input


def _split_name(line: str, default: str) -> tuple[str, str]:
    """``name<TAB>code`` or ``name: code``; a bare code is named by position."""
    for sep in ("\t", ": "):
        if sep in line:
            name, code = line.split(sep, 1)
            return name.strip(), code.strip()
    return default, line.strip()


def _parse_code(fmt: str, code: str):
    if fmt == "pd":
        if code.startswith("PD[") and code.endswith("]"):
            code = code[3:-1].replace("],", "] ")
        return parse_pd(code)
    if fmt == "gauss":
        return gauss_to_pd(parse_gauss(code))
    if fmt == "dt":
        return parse_dt(code)
    raise ValueError(f"unknown format {fmt!r}")


def load_inputs(paths, fmt: str):
    """Yield CorpusRecord or CorpusError items from every input file."""
    for path in paths:
        if path == "-":
            yield from _load_lines(sys.stdin, fmt, "stdin")
            continue
        with open(path, encoding="utf-8") as fh:
            yield from _load_lines(fh, fmt, Path(path).stem)


def _load_lines(fh, fmt: str, stem: str):
    if fmt == "jsonl":
        yield from parse_corpus_lines(fh)
        return
    for lineno, raw in enumerate(fh, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        name, code = _split_name(raw, f"{stem}:{lineno}")
        try:
            yield CorpusRecord(name, _parse_code(fmt, code), {}, lineno)
        except (KnotCertError, ValueError) as exc:
            yield CorpusError(lineno, f"{type(exc).__name__}: {exc}", name)


# ---------------------------------------------------------------- workers


def _failure(name, exc) -> dict:
    return {"name": name, "ok": False, "error": f"{type(exc).__name__}: {exc}"}


def _diagram(rec: CorpusRecord, cfg: RunConfig):
    D = build_diagram(rec.pd)
    if D.c > cfg.max_crossings:
        raise ResourceLimit(f"{D.c} crossings exceeds --max-crossings {cfg.max_crossings}")
    return D


def _profile(D):
    if D.c and is_reduced(D):
        return twist_regions(D)
    return None


def work_invariants(rec: CorpusRecord, cfg: RunConfig) -> dict:
    try:
        D = _diagram(rec, cfg)
        bundle = invariant_bundle(D)
        prof = _profile(D)
        return {"name": rec.name, "ok": True, "invariants": bundle.to_json(),
                "twist": None if prof is None else prof.to_json()}
    except Exception as exc:  # one bad knot must not stop the run
        return _failure(rec.name, exc)


def work_certify(rec: CorpusRecord, cfg: RunConfig) -> dict:
    try:
        D = _diagram(rec, cfg)
        bundle = invariant_bundle(D)
        prof = _profile(D)
        certs = [cf.evaluate(c, D, profile=prof, bundle=bundle, name=rec.name, eps=cfg.gamma_eps).to_json()
                 for c in cfg.criteria]
        return {"name": rec.name, "ok": True, "certificates": certs}
    except Exception as exc:  # one bad knot must not stop the run
        return _failure(rec.name, exc)


def work_bounds(rec: CorpusRecord, cfg: RunConfig) -> dict:
    try:
        D = _diagram(rec, cfg)
        bundle = invariant_bundle(D)
        c = rec.expected.get("crossings", D.c)
        checks = battery(D, bundle, c=c, expected=rec.expected, include_det=cfg.with_det,
                         ctx=GammaContext(cfg.gamma_eps) if cfg.with_det else None)
        bad = [e.ineq for e in checks if e.ok is not True]
        return {"name": rec.name, "ok": True, "checks": [e.to_json() for e in checks], "violations": bad}
    except Exception as exc:  # one bad knot must not stop the run
        return _failure(rec.name, exc)


WORKERS = {"invariants": work_invariants, "certify": work_certify, "verify-bounds": work_bounds}


def _run_one(args):
    kind, item, cfg = args
    if isinstance(item, CorpusError):
        return {"name": item.name or f"line {item.line}", "ok": False, "error": item.message}
    return WORKERS[kind](item, cfg)


def run_records(cfg: RunConfig, items) -> list[dict]:
    """Process items in order; with jobs > 1 they are spread over processes."""
    tasks = [(cfg.command, it, cfg) for it in items]
    if cfg.jobs == 1 or len(tasks) < 2:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))


# ---------------------------------------------------------------- scanning


def scan_main_constants(lo: int, hi: int, eps=DEFAULT_EPS) -> list[dict]:
    """Truth table of the two constant inequalities for tw in [lo, hi].

    Both eqn X forms (7X/64 and 7/(64X), X = 1/28) and both eqn Y forms
    ((7+Y)/4 and (7+Y)/2, Y = 1/4) are evaluated with tw_bar = tw.
    """
    ctx = cf.context(Fraction(eps))
    checks = (
        ("X", lambda tw: cf.eqn_x(tw, tw, Fraction(1, 28), ctx, printed=True)),
        ("X_lemma", lambda tw: cf.eqn_x(tw, tw, Fraction(1, 28), ctx, printed=False)),
        ("Y", lambda tw: cf.eqn_y(tw, tw, Fraction(1, 4), ctx, divisor=4)),
        ("Y_lemma", lambda tw: cf.eqn_y(tw, tw, Fraction(1, 4), ctx, divisor=2)),
    )
    rows = []
    for tw in range(lo, hi + 1):
        row = {"tw": tw}
        for key, sides in checks:
            try:
                lhs, rhs = sides(tw)
                row[key] = lhs.le(rhs)
            except ZeroDivisionError:  # the lower bound for 1-d is not positive yet
                row[key] = False
        rows.append(row)
    return rows


def minimal_threshold(rows, keys=("X", "Y")) -> int | None:
    """Smallest tw from which every later row is true in all ``keys``."""
    best = None
    for row in reversed(rows):
        if all(row[k] is True for k in keys):
            best = row["tw"]
        else:
            break
    return best


def _parse_range(tokens) -> tuple[int, int]:
    text = " ".join(tokens)
    if ".." in text:
        a, b = text.split("..", 1)
    else:
        parts = text.split()
        if len(parts) != 2:
            raise ValueError("range must be LO..HI or LO HI")
        a, b = parts
    return int(a), int(b)


# ------------------------------------------------------------------ output


def _summary(records, criteria) -> dict:
    table = {c: {} for c in criteria}
    for rec in records:
        for cert in rec.get("certificates", ()):
            row = table.setdefault(cert["criterion"], {})
            row[cert["verdict"]] = row.get(cert["verdict"], 0) + 1
    return table


def _text_table(table) -> str:
    verdicts = sorted({v for row in table.values() for v in row})
    width = max([len(c) for c in table] + [9])
    head = "criterion".ljust(width) + "".join(v.rjust(len(v) + 2) for v in verdicts)
    lines = [head]
    for crit, row in table.items():
        lines.append(crit.ljust(width) + "".join(str(row.get(v, 0)).rjust(len(v) + 2) for v in verdicts))
    return "\n".join(lines)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="certify", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=["invariants", "certify", "verify-bounds", "scan-main-constants"])
    p.add_argument("inputs", nargs="*", metavar="INPUT")
    p.add_argument("--format", dest="fmt", choices=["pd", "gauss", "dt", "jsonl"], default=None)
    p.add_argument("--gamma-eps", default=None, help="width of the gamma bracket, e.g. 1e-30 or 1/10**30")
    p.add_argument("--max-crossings", type=int, default=200)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $CERTIFY_JOBS or 1)")
    p.add_argument("--criterion", action="append", default=None,
                   help="criterion id or alias; may be repeated (default: all)")
    p.add_argument("--out", default=None)
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--with-det", action="store_true", help="verify-bounds: include the det lower bounds")
    p.add_argument("--summary", action="store_true", help="print an aligned text summary on stderr")
    return p


def _parse_eps(text) -> Fraction:
    if text is None:
        return DEFAULT_EPS
    text = text.strip()
    if "**" in text:
        num, _, rest = text.partition("/")
        base, _, exp = rest.partition("**")
        return Fraction(int(num), int(base) ** int(exp))
    return Fraction(text)  # "1e-30" and "1/1000" are both read exactly


def _guess_format(paths) -> str:
    exts = {Path(p).suffix.lower() for p in paths}
    return "jsonl" if exts <= {".jsonl", ".json"} else "pd"


def config_from_args(ns) -> RunConfig:
    jobs = ns.jobs if ns.jobs is not None else int(os.environ.get("CERTIFY_JOBS", "1") or 1)
    criteria = cf.CRITERIA
    if ns.criterion:
        criteria = tuple(CRITERION_ALIASES.get(c, c) for c in ns.criterion)
        unknown = [c for c in criteria if c not in cf.CRITERIA]
        if unknown:
            raise ValueError(f"unknown criterion {unknown[0]!r}")
    fmt = ns.fmt or _guess_format(ns.inputs)
    return RunConfig(ns.command, tuple(ns.inputs), fmt, _parse_eps(ns.gamma_eps), ns.max_crossings, jobs,
                     criteria, ns.out, not ns.no_timestamp, ns.with_det)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_intermixed_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    out = open(cfg.out, "w", encoding="utf-8") if cfg.out else sys.stdout
    try:
        return _main(cfg, out, ns.summary)
    finally:
        if cfg.out:
            out.close()


def _main(cfg: RunConfig, out, want_summary: bool) -> int:
    header = {"type": "run", "command": cfg.command}
    if cfg.timestamp:
        header["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if cfg.command == "scan-main-constants":
        try:
            lo, hi = _parse_range(cfg.inputs)
        except ValueError as exc:
            print(f"certify: {exc}", file=sys.stderr)
            return EXIT_PARTIAL
        rows = scan_main_constants(lo, hi, cfg.gamma_eps)
        print(_dump(header), file=out)
        for row in rows:
            print(_dump(row), file=out)
        print(_dump({"type": "summary", "threshold": minimal_threshold(rows),
                     "threshold_lemma_forms": minimal_threshold(rows, ("X_lemma", "Y_lemma"))}), file=out)
        if want_summary:
            for row in rows:
                flags = " ".join(f"{k}={'T' if row[k] else 'F'}" for k in ("X", "X_lemma", "Y", "Y_lemma"))
                print(f"tw={row['tw']:4d}  {flags}", file=sys.stderr)
        return EXIT_OK
    try:
        items = list(load_inputs(cfg.inputs, cfg.fmt))
    except OSError as exc:
        print(f"certify: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    if not items:
        return EXIT_OK
    records = run_records(cfg, items)
    print(_dump(header), file=out)
    for rec in records:
        print(_dump(rec), file=out)
    failed = [r for r in records if not r["ok"]]
    for r in failed:
        print(f"certify: {r['name']}: {r['error']}", file=sys.stderr)
    status = EXIT_PARTIAL if failed else EXIT_OK
    if cfg.command == "certify":
        table = _summary(records, cfg.criteria)
        print(_dump({"type": "summary", "verdicts": table}), file=out)
        if want_summary:
            print(_text_table(table), file=sys.stderr)
    if cfg.command == "verify-bounds":
        bad = [(r["name"], v) for r in records if r["ok"] for v in r["violations"]]
        print(_dump({"type": "summary", "knots": len(records), "violations": len(bad)}), file=out)
        if bad:
            err = ViolationFound("; ".join(f"{n}: {v}" for n, v in bad))
            print(f"certify: ViolationFound: {err}", file=sys.stderr)
            return EXIT_VIOLATION
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
