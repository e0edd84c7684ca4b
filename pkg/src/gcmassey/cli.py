"""Command-line entry point.

    gcmassey enumerate --genus 0 --legs 4 --format json
    gcmassey complex --operad hlie --genus 1 --legs 4
    gcmassey homology --operad com --genus 3
    gcmassey rep wreath --q 3 --hook 4,1,1
    gcmassey verify theta --j 2

Exit codes: 0 success / all PASS, 1 some FAIL, 2 usage or build error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from typing import Dict, List, Optional, Sequence

from . import symrep, verify
from .feynman import ComplexOptions, Operad, build_complex, gc2_slice
from .graphs import enumerate_graphs
from .linalg import homology_rank

FORMATS = ("json", "csv", "human")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = ""
    sub: Optional[str] = None
    genus: Optional[int] = None
    legs: int = 0
    j: Optional[int] = None
    degree: Optional[int] = None
    operad: str = "hlie"
    no_loops: bool = False
    no_simple_loops: bool = False
    q: Optional[int] = None
    hook: Optional[str] = None
    t: Optional[int] = None
    route: str = "brute"
    out: Optional[str] = None
    format: str = "human"
    jobs: Optional[int] = None
    seed: Optional[int] = None
    opt_in_slow: bool = False
    no_timing: bool = False

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        if self.operad not in ("com", "hlie"):
            raise UsageError("--operad must be com or hlie")
        if self.genus is not None and (self.genus < 0 or self.legs < 0 or 2 * self.genus + self.legs < 3):
            raise UsageError("need genus >= 0, legs >= 0 and 2*genus + legs >= 3")
        if self.j is not None and self.j < 1:
            raise UsageError("--j must be >= 1")
        if self.q is not None and self.q < 1:
            raise UsageError("--q must be >= 1")
        if self.jobs is not None and self.jobs < 1:
            raise UsageError("--jobs must be >= 1")

    @property
    def options(self) -> ComplexOptions:
        return ComplexOptions(no_loops=self.no_loops, no_simple_loops=self.no_simple_loops)

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise UsageError(f"{self.command} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, text: str):
    kind = _FIELD_TYPES[name]
    if "bool" in kind:
        low = text.strip().lower()
        if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
            raise UsageError(f"config {name}: expected a boolean, got {text!r}")
        return low in ("1", "true", "yes", "on")
    if "int" in kind:
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"config {name}: expected an integer, got {text!r}") from None
    return text.strip()


def read_config(path: str) -> Dict[str, object]:
    """Flat ``key = value`` file; keys mirror the long flags (dashes or underscores)."""
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_string("[run]\n" + fh.read())
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}") from None
    except configparser.Error as e:
        raise UsageError(f"bad config {path}: {e}") from None
    out = {}
    for key, value in parser["run"].items():
        name = key.replace("-", "_")
        if name not in _FIELD_TYPES or name in ("command", "sub"):
            raise UsageError(f"unknown config key {key!r}")
        out[name] = _coerce(name, value)
    return out


# ------------------------------------------------------------------ output

def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v)


def report(results: Sequence[dict], format: str, columns: Optional[Sequence[str]] = None) -> str:
    """Serialize a list of flat records.  Output depends only on the input."""
    rows = list(results)
    if columns is None:
        columns = list(rows[0]) if rows else []
    if format == "json":
        return json.dumps(rows, sort_keys=True, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if columns:
            w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    if format == "human":
        if not rows:
            return "(no results)\n"
        table = [list(columns)] + [[_cell(r.get(c)) for c in columns] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
        return "".join("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() + "\n" for row in table)
    raise UsageError(f"unknown format {format!r}")


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from None


# ------------------------------------------------------------------ commands

def cmd_enumerate(cfg: RunConfig) -> List[dict]:
    cfg.require("genus")
    gs = enumerate_graphs(cfg.genus, cfg.legs, filter=cfg.options.accepts)
    return [{"index": i, "edges": g.n_edges, "graph": g.to_dict()} for i, g in enumerate(gs)]


def cmd_complex(cfg: RunConfig) -> List[dict]:
    cfg.require("genus")
    cx = build_complex(Operad(cfg.operad), cfg.genus, cfg.legs, cfg.options)
    return [{"edges": r, "degree": s, "dim": d} for (r, s), d in cx.dims().items()]


def cmd_differential(cfg: RunConfig) -> List[dict]:
    """Nonzero entries of the total differential out of total degree ``--degree``."""
    cfg.require("genus", "degree")
    cx = build_complex(Operad(cfg.operad), cfg.genus, cfg.legs, cfg.options)
    m = cx.total_matrix(cfg.degree)
    return [{"row": r, "column": c, "value": f"{x.numerator}/{x.denominator}"}
            for (r, c), x in sorted(m.entries.items())]


def cmd_homology(cfg: RunConfig) -> List[dict]:
    """Com: the loopless graph complex of loop order ``--genus``.  HLie: total degrees of the Feynman transform."""
    cfg.require("genus")
    if cfg.operad == "com":
        sl, _ = gc2_slice(cfg.genus)
    else:
        sl = build_complex(Operad.HLIE, cfg.genus, cfg.legs, cfg.options).chain_slice()
    degrees = [cfg.degree] if cfg.degree is not None else sorted(d for d, n in sl.dims.items() if n)
    return [{"genus": cfg.genus, "degree": d, "rank": homology_rank(sl, d)} for d in degrees]


def _hook_arg(cfg: RunConfig):
    cfg.require("hook")
    try:
        return symrep.parse_partition(cfg.hook)
    except (ValueError, symrep.PartitionError) as e:
        raise UsageError(f"bad --hook: {e}") from None


def cmd_rep(cfg: RunConfig) -> List[dict]:
    rows = []
    if cfg.sub == "wreath":
        cfg.require("q")
        ps = [_hook_arg(cfg)] if cfg.hook else symrep.hooks(2 * cfg.q)
        for p in ps:
            rows.append({"partition": symrep.fmt(p), "subgroup": f"S2wrS{cfg.q}", "irrep": "L",
                         "multiplicity": symrep.wreath_hook_multiplicity(p, cfg.q)})
    elif cfg.sub == "restrict":
        p = _hook_arg(cfg)
        cfg.require("q")
        a, b = 2 * cfg.q, sum(p) - 2 * cfg.q
        if b < 0:
            raise UsageError("--q too large for the partition")
        for (mu, nu), c in sorted(symrep.lr_restrict(p, a, b).items()):
            rows.append({"partition": symrep.fmt(p), "subgroup": f"S{a}xS{b}",
                         "irrep": f"{symrep.fmt(mu)}x{symrep.fmt(nu)}", "multiplicity": c})
    elif cfg.sub == "cyclic":
        p = _hook_arg(cfg)
        for i, m in enumerate(symrep.cyclic_multiplicities([p], sum(p))):
            rows.append({"partition": symrep.fmt(p), "subgroup": f"C{sum(p)}", "irrep": f"W{i}",
                         "multiplicity": m})
    elif cfg.sub == "relations":
        cfg.require("t", "j")
        n = cfg.t + 2 * cfg.j
        chi = symrep.relation_span_character(cfg.t, cfg.j)
        for p in symrep.partitions(n):
            m = symrep.inner_product(chi, symrep.character(p))
            if m:
                rows.append({"partition": f"span(t={cfg.t},j={cfg.j})", "subgroup": f"S{n}",
                             "irrep": symrep.fmt(p), "multiplicity": int(m)})
    else:
        raise UsageError("rep needs one of: restrict, wreath, cyclic, relations")
    return rows


REP_COLUMNS = ["partition", "subgroup", "irrep", "multiplicity"]


def cmd_verify(cfg: RunConfig) -> List[verify.Certificate]:
    sub = cfg.sub
    jobs = cfg.jobs or os.cpu_count() or 1
    if sub == "all":
        return verify.verify_all(cfg.opt_in_slow, jobs)
    if sub == "dsquared":
        cfg.require("genus")
        return [verify.verify_dsquared(cfg.operad, cfg.genus, cfg.legs, options=cfg.options)]
    if sub not in verify.CLAIMS:
        raise UsageError("verify needs one of: " + ", ".join(sorted(verify.CLAIMS)) + ", all")
    cfg.require("j")
    if cfg.j >= 3 and not cfg.opt_in_slow:
        raise UsageError("j = 3 checks take minutes; pass --opt-in-slow")
    if sub == "nontrivial":
        return [verify.verify_nontriviality(cfg.j, cfg.route)]
    return [verify.CLAIMS[sub](cfg.j)]


# ------------------------------------------------------------------ parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int)
    common.add_argument("--legs", type=int)
    common.add_argument("--j", type=int)
    common.add_argument("--degree", type=int)
    common.add_argument("--operad", choices=["com", "hlie"])
    common.add_argument("--no-loops", action="store_const", const=True)
    common.add_argument("--no-simple-loops", action="store_const", const=True)
    common.add_argument("--q", type=int)
    common.add_argument("--hook", help="comma-separated partition, e.g. 4,1,1")
    common.add_argument("--t", type=int)
    common.add_argument("--route", choices=["brute", "pipeline"])
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out")
    common.add_argument("--config")
    common.add_argument("--jobs", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--opt-in-slow", action="store_const", const=True)
    common.add_argument("--no-timing", action="store_const", const=True,
                        help="report ms = 0 so certificate output is byte-reproducible")

    p = argparse.ArgumentParser(prog="gcmassey", description=__doc__.splitlines()[0])
    subs = p.add_subparsers(dest="command", required=True)
    for name in ("enumerate", "complex", "differential", "homology"):
        subs.add_parser(name, parents=[common])
    rep = subs.add_parser("rep", parents=[common])
    rep.add_argument("sub", choices=["restrict", "wreath", "cyclic", "relations"])
    ver = subs.add_parser("verify", parents=[common])
    ver.add_argument("sub", choices=sorted(verify.CLAIMS) + ["all"])
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    values: Dict[str, object] = {}
    if ns.config:
        values.update(read_config(ns.config))
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None:
            values[f.name] = v
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> int:
    if cfg.command == "verify":
        certs = cmd_verify(cfg)
        if cfg.no_timing:
            for c in certs:
                c.ms = 0
        records = [c.to_dict() for c in verify.sort_certificates(certs)]
        if cfg.format == "json":
            text = report(records, "json")
        else:
            cols = ["claim", "params", "verdict", "ms"] if cfg.format == "human" else \
                ["claim", "params", "verdict", "witness", "ms"]
            text = report(records, cfg.format, cols)
        write_output(text, cfg.out)
        return 0 if all(c.passed for c in certs) else 1
    handler = {"enumerate": cmd_enumerate, "complex": cmd_complex, "differential": cmd_differential,
               "homology": cmd_homology, "rep": cmd_rep}[cfg.command]
    rows = handler(cfg)
    write_output(report(rows, cfg.format, REP_COLUMNS if cfg.command == "rep" else None), cfg.out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except SystemExit as e:  # argparse usage errors and --help
        return int(e.code or 0)
    except (UsageError, ValueError, symrep.PartitionError) as e:
        print(f"gcmassey: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"gcmassey: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
