"""Command-line interface: `tqf <command> ...`."""

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify as V
from .arith import fraction_str, prime_divisors
from .clifford import OrderError, dual_form, even_clifford, ramified_primes, rho_count
from .forms import TernaryForm, automorphisms, invariants, is_equivalent, reduce, theta_series
from .genera import EnumerationConfig, ResourceLimitError, default_cache_dir, get_inventory
from .hurwitz import class_number_4N, modified_H, type_number
from .local import GenusLabel, genus_label, is_level_4N
from .transforms import TransformError, phi_2, phi_p, watson


@dataclass(frozen=True)
class CliConfig:
    format: str = "json"
    cache_dir: Path = None
    jobs: int = 1
    max_candidates: int = EnumerationConfig().max_candidates
    use_cache: bool = True
    timing: bool = False

    def __post_init__(self):
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        if self.cache_dir is None:
            object.__setattr__(self, "cache_dir", default_cache_dir())

    @property
    def enumeration(self):
        return EnumerationConfig(jobs=self.jobs, max_candidates=self.max_candidates)

    def inventory(self, N):
        return get_inventory(N, self.cache_dir, self.use_cache, self.enumeration)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers

def _dumps(obj):
    return json.dumps(obj, separators=(",", ":"))


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(cfg, obj, header=None, rows=None, text=None):
    if cfg.format == "json":
        return _dumps(obj)
    if cfg.format == "csv":
        if header is None:
            header, rows = list(obj), [list(obj.values())]
        return _csv(header, rows)
    if text is not None:
        return text
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {v}" for k, v in obj.items())
    return str(obj)


def _matrix(U):
    return [list(row) for row in U]


def _form(text):
    try:
        return TernaryForm.parse(text)
    except ValueError as exc:
        raise UsageError(f"malformed form {text!r}: expected a,b,c,r,s,t ({exc})") from None


def _odd_squarefree_from_level(level):
    if not is_level_4N(level):
        raise UsageError(f"level {level} is not 4N with N odd and squarefree")
    return level // 4


# ---------------------------------------------------------------------------
# commands

def cmd_form(args, cfg):
    f = _form(args.form)
    if args.action == "info":
        inv = invariants(f)
        genus = None
        if inv.primitive and is_level_4N(inv.level):
            genus = str(genus_label(f))
        obj = {"d": inv.discriminant, "m": inv.divisor, "level": inv.level,
               "primitive": inv.primitive, "aut": inv.aut_count, "genus": genus}
        return _emit(cfg, obj), 0
    if args.action == "count":
        if args.upto is not None:
            series = theta_series(f, args.upto)
            return _emit(cfg, {"form": str(f), "counts": series}, ["n", "count"],
                         list(enumerate(series)), " ".join(map(str, series))), 0
        if args.n is None:
            raise UsageError("form count needs n or --upto")
        value = theta_series(f, args.n)[args.n]
        return _emit(cfg, {"form": str(f), "n": args.n, "count": value}, text=str(value)), 0
    if args.action == "reduce":
        g = reduce(f)
        return _emit(cfg, {"form": str(f), "reduced": str(g)}, text=str(g)), 0
    if args.action == "equiv":
        if args.other is None:
            raise UsageError("form equiv needs a second form")
        g = _form(args.other)
        U = is_equivalent(f, g)
        obj = {"equivalent": U is not None, "witness": None if U is None else _matrix(U)}
        text = "not equivalent" if U is None else "equivalent, U = " + str(_matrix(U))
        return _emit(cfg, obj, ["equivalent", "witness"],
                     [[obj["equivalent"], "" if U is None else _dumps(obj["witness"])]], text), 0
    if args.action == "aut":
        group = automorphisms(f)
        obj = {"form": str(f), "order": len(group), "elements": [_matrix(U) for U in group]}
        return _emit(cfg, obj, ["index", "matrix"],
                     [[i, _dumps(_matrix(U))] for i, U in enumerate(group)],
                     f"|Aut| = {len(group)}"), 0
    raise UsageError(f"unknown form action {args.action}")


def cmd_classify(args, cfg):
    N = _odd_squarefree_from_level(args.level)
    inv = cfg.inventory(N)
    recs = [{"level": inv.level, "form": str(r.form), "d": r.form.discriminant,
             "aut": r.aut, "genus": str(r.genus)} for r in inv.classes]
    header = ["level", "form", "d", "aut", "genus"]
    text = "\n".join(f"{r['genus']}  {r['form']}  |Aut|={r['aut']}" for r in recs)
    text += f"\n{len(recs)} classes in {len(inv.partition)} genera"
    obj = {"level": inv.level, "classes": len(recs), "genera": len(inv.partition), "records": recs}
    return _emit(cfg, obj, header, [[r[h] for h in header] for r in recs], text), 0


def cmd_hurwitz(args, cfg):
    v = modified_H(args.N1, args.N2, args.D)
    if cfg.format == "json":
        return _dumps(fraction_str(v)), 0
    if cfg.format == "csv":
        return _csv(["N1", "N2", "D", "value"], [[args.N1, args.N2, args.D, fraction_str(v)]]), 0
    return fraction_str(v), 0


def cmd_typenum(args, cfg):
    T = type_number(args.N, args.F)
    return _emit(cfg, T, ["N", "F", "type_number"], [[args.N, args.F, T]], str(T)), 0


def cmd_classnum(args, cfg):
    c = class_number_4N(args.N)
    return _emit(cfg, c, ["level", "classes"], [[4 * args.N, c]], str(c)), 0


def cmd_theta(args, cfg):
    upto = 20 if args.upto is None else args.upto
    if args.series.startswith("G_"):
        g = GenusLabel.parse(args.series)
        inv = cfg.inventory(_odd_squarefree_from_level(g.level))
        series = V.theta_genus(inv, g, upto)
    else:
        try:
            d, e = (int(x) for x in args.series.split(","))
        except ValueError:
            raise UsageError(f"theta expects a genus label or d,2N/d; got {args.series!r}") from None
        if (d * e) % 2:
            raise UsageError("d * (2N/d) must be even")
        series = V.theta_modified(d, d * e // 2, args.dilate, upto)
    coeffs = [fraction_str(c) for c in series]
    return _emit(cfg, {"series": args.series, "coefficients": coeffs}, ["n", "coefficient"],
                 list(enumerate(coeffs)), " ".join(coeffs)), 0


def cmd_transform(args, cfg):
    f = _form(args.form)
    if args.kind == "phi":
        g = phi_2(f) if args.param == 2 else phi_p(f, args.param)
        meta = {}
    else:
        g = watson(f, args.param)
        meta = {} if args.param == 4 else {"experimental": True}
    r = reduce(g)
    obj = {"input": str(f), "output": str(g), "reduced": str(r), **meta}
    return _emit(cfg, obj, text=str(r)), 0


def cmd_clifford(args, cfg):
    f = _form(args.form)
    O = even_clifford(f)
    if args.action == "build":
        obj = json.loads(O.to_json())
        obj["discrd"] = O.discriminant
        obj["ramified"] = sorted(ramified_primes(O))
        if cfg.format == "csv":
            return _csv(["form", "discrd", "ramified", "traces", "table"],
                        [[str(f), O.discriminant, " ".join(map(str, obj["ramified"])),
                          _dumps(list(O.traces)), _dumps(obj["table"])]]), 0
        return _emit(cfg, obj, text=f"order with discrd {O.discriminant}, ramified at "
                     f"{obj['ramified']}"), 0
    if args.action == "roundtrip":
        g = dual_form(O)
        ok = is_equivalent(g, f) is not None if f.is_primitive else reduce(g) == reduce(f)
        obj = {"form": str(f), "dual": str(g), "equivalent": ok, "discrd": O.discriminant,
               "d": f.discriminant}
        return _emit(cfg, obj), (0 if ok and O.discriminant == f.discriminant else 1)
    if args.action == "rho":
        if args.n is None or args.r is None:
            raise UsageError("clifford rho needs n and r")
        v = rho_count(O, args.n, args.r)
        return _emit(cfg, {"form": str(f), "n": args.n, "r": args.r, "rho": v}, text=str(v)), 0
    raise UsageError(f"unknown clifford action {args.action}")


THEOREM_LEVELS = (4, 12, 20, 28, 52, 60, 84, 140, 156)
DU_CASES = ((1, 3, 5, 1), (1, 3, 5, 2), (10, 3, 7, 1))
EISENSTEIN_N = (1, 3, 5, 15, 105)
SUITES = ("table2", "table3", "appendixA", "appendixB", "theorem", "classification",
          "typenumbers", "berkovich-jagy", "du", "eisenstein", "auxiliary", "all")


def _levels(args):
    if args.levels:
        return [int(x) for x in args.levels.split(",")]
    return list(THEOREM_LEVELS)


def run_suite(name, args, cfg):
    """A list of reports for one suite name."""
    m = args.max
    kw = {"cache_dir": cfg.cache_dir, "use_cache": cfg.use_cache}
    if name in ("table2", "table3"):
        return [V.check_golden_tables(name, m or (200 if name == "table2" else 100), cfg.jobs)]
    if name == "appendixA":
        return [V.check_golden_tables(name)]
    if name == "appendixB":
        return [V.check_golden_tables(name, m or 10 ** 9)]
    if name == "theorem":
        return [V.check_genus_identities(_odd_squarefree_from_level(L), m or 100, **kw)
                for L in _levels(args)]
    if name == "classification":
        return [V.check_classification(_odd_squarefree_from_level(L), **kw) for L in _levels(args)]
    if name == "typenumbers":
        return [V.check_type_numbers(m or 200)]
    if name == "berkovich-jagy":
        return [V.check_berkovich_jagy(p, m or 100, **kw) for p in (3, 5, 7, 13)]
    if name == "du":
        return [V.check_du(*case, m_max=m or 50) for case in DU_CASES]
    if name == "eisenstein":
        cases = [(N, l) for N in EISENSTEIN_N for l in sorted({1, V.prime_of(N)})]
        return [V.check_eisenstein(cases, m or 50)]
    if name == "auxiliary":
        return [V.check_auxiliary(n_max=m or 100)]
    if name == "all":
        return [r for s in SUITES[:-1] for r in run_suite(s, args, cfg)]
    raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def cmd_verify(args, cfg):
    reports = run_suite(args.suite, args, cfg)
    ok = all(r.passed for r in reports)
    if cfg.format == "json":
        body = [r.to_dict(runtime=cfg.timing) for r in reports]
        out = json.dumps(body[0] if len(body) == 1 else body, indent=1)
    elif cfg.format == "csv":
        rows = []
        for r in reports:
            for c in r.checks:
                d = c.to_dict()
                rows.append([r.suite, _dumps(r.parameters), d["name"], d["status"],
                             _dumps(d["lhs"]) if isinstance(d["lhs"], list) else d["lhs"],
                             _dumps(d["rhs"]) if isinstance(d["rhs"], list) else d["rhs"],
                             d.get("classification", ""), d.get("detail", "")])
        out = _csv(["suite", "parameters", "check", "status", "lhs", "rhs",
                    "classification", "detail"], rows)
    else:
        lines = []
        for r in reports:
            lines.append(r.to_text() + (f"  ({r.runtime:.2f}s)" if cfg.timing else ""))
        out = "\n".join(lines)
    return out, (0 if ok else 1)


# ---------------------------------------------------------------------------
# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", type=Path, default=argparse.SUPPRESS,
                        help="inventory cache (default: $TQF_CACHE_DIR or ~/.cache/tqf)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--max-candidates", type=int, default=argparse.SUPPRESS,
                        help="resource bound on enumeration candidates")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include runtimes (output is then not reproducible)")

    p = argparse.ArgumentParser(prog="tqf", parents=[common],
                                description="Ternary quadratic forms of level 4N: classes, genera, "
                                            "modified Hurwitz class numbers and identities.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("form", parents=[common], help="invariants and counts of one form")
    f.add_argument("action", choices=("info", "count", "reduce", "equiv", "aut"))
    f.add_argument("form")
    f.add_argument("extra", nargs="?", help="n for count, second form for equiv")
    f.add_argument("--upto", type=int)

    c = sub.add_parser("classify", parents=[common], help="all classes of level 4N")
    c.add_argument("level", type=int, help="the level 4N")

    h = sub.add_parser("hurwitz", parents=[common], help="modified Hurwitz class number")
    h.add_argument("N1", type=int)
    h.add_argument("N2", type=int)
    h.add_argument("D", type=int)

    t = sub.add_parser("typenum", parents=[common], help="type number T_{N,F}")
    t.add_argument("N", type=int)
    t.add_argument("F", type=int)

    k = sub.add_parser("classnum", parents=[common], help="|C(4N)| from the closed formula")
    k.add_argument("N", type=int)

    th = sub.add_parser("theta", parents=[common], help="q-expansion of a genus or Eisenstein series")
    th.add_argument("series", help="genus label G_{l,d,t} or d,2N/d")
    th.add_argument("--upto", type=int)
    th.add_argument("--dilate", type=int, default=1, help="substitute q -> q^l")

    tr = sub.add_parser("transform", parents=[common], help="Lehman phi_p or Watson lambda_m")
    tr.add_argument("kind", choices=("phi", "watson"))
    tr.add_argument("form")
    tr.add_argument("param", type=int, help="p for phi (2 allowed), m for watson")

    cl = sub.add_parser("clifford", parents=[common], help="even Clifford order of a form")
    cl.add_argument("action", choices=("build", "roundtrip", "rho"))
    cl.add_argument("form")
    cl.add_argument("n", type=int, nargs="?")
    cl.add_argument("r", type=int, nargs="?")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--max", type=int, help="n_max, or the largest 4N for appendixB")
    v.add_argument("--levels", help="comma-separated levels 4N for theorem/classification")
    return p


COMMANDS = {"form": cmd_form, "classify": cmd_classify, "hurwitz": cmd_hurwitz,
            "typenum": cmd_typenum, "classnum": cmd_classnum, "theta": cmd_theta,
            "transform": cmd_transform, "clifford": cmd_clifford, "verify": cmd_verify}


def _config(args):
    return CliConfig(format=getattr(args, "format", "json"),
                     cache_dir=getattr(args, "cache_dir", None),
                     jobs=getattr(args, "jobs", 1),
                     max_candidates=getattr(args, "max_candidates", EnumerationConfig().max_candidates),
                     use_cache=not getattr(args, "no_cache", False),
                     timing=getattr(args, "timing", False))


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command == "form":
        args.n = args.other = None
        if args.extra is not None:
            if args.action == "count":
                try:
                    args.n = int(args.extra)
                except ValueError:
                    print(f"tqf: error: n must be an integer, got {args.extra!r}", file=stderr)
                    return 2
            else:
                args.other = args.extra
    try:
        cfg = _config(args)
        out, code = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, KeyError, TransformError, OrderError,
            ResourceLimitError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tqf: error: {msg}", file=stderr)
        return 2
    print(out, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
