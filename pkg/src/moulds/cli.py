"""Command-line front end.

Every subcommand builds a :class:`Report` and prints it as JSON (sorted
keys, stable across runs), LaTeX or plain text.  Exit status is 0 on
success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fqsym, ncsf, nct, ratmould, treemould, zoo
from .errors import HigherPoleError, MouldError, NotInSpanError, ParamError, ParseError
from .freealg import FreeSeries, bracket, is_lie
from .qrat import coeff_str
from .ratmould import DEFAULT_SEED, RatMould
from .textio import format_mould, format_perm, parse_mould, parse_perm

FORMATS = ("json", "latex", "text")
SUITES = ("tamari", "alternal", "gamma", "hooks", "ncsf")
NCSF_TABLES = ("s-lambda", "s-psi", "magnus", "bch", "zassenhaus", "phi-q")
# basis in which each table's compositions are expanded
NCSF_BASIS = {"s-lambda": "Lambda", "s-psi": "Psi", "magnus": "Phi", "bch": "Psi", "zassenhaus": "Psi", "phi-q": "f"}
TABLES = ("a006013", "nif-counts", "po", "solomon", "qsolomon", "dynkin") + NCSF_TABLES


@dataclass
class Report:
    command: str
    params: dict
    results: dict
    ok: bool | None = None
    elapsed: float | None = field(default=None, compare=False)
    # basis symbol for LaTeX keys: "f" for permutations, else a composition basis
    basis: str = field(default="f", compare=False)

    def as_dict(self) -> dict:
        out = {"command": self.command, "params": self.params, "results": self.results}
        if self.ok is not None:
            out["ok"] = self.ok
        if self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


# ---------------------------------------------------------------- values


def _text(c) -> str:
    return coeff_str(c)


def _comp_key(I) -> str:
    return ",".join(map(str, I))


def _fsym_dict(a: fqsym.FQSymElement) -> dict:
    return {format_perm(s): _text(c) for s, c in a.items()}


def _series_dict(x: FreeSeries) -> dict:
    return {_comp_key(w): _text(c) for w, c in x.items()}


def _parse_value(text: str):
    if text == "symbolic":
        return None
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParamError(f"not an exact rational: {text!r}") from None
    return int(v) if v.denominator == 1 else v


def parse_params(items: list[str] | None) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ParamError(f"--param expects NAME=RATIONAL, got {item!r}")
        k, v = item.split("=", 1)
        val = _parse_value(v.strip())
        if val is not None:
            out[k.strip()] = val
    return out


_NAMED = re.compile(r"([A-Za-z]+)(?::(\d+))?")


def parse_mould_expr(text: str, params: dict) -> RatMould:
    """Permutation word, ``Name:n`` for a named mould, or the fraction grammar."""
    text = text.strip()
    if re.fullmatch(r"[0-9,]+", text):
        return ratmould.perm_mould(parse_perm(text))
    m = _NAMED.fullmatch(text)
    if m and m.group(1) in zoo.NAMES:
        if m.group(2) is None:
            raise ParamError(f"named mould {text!r} needs an arity, e.g. {m.group(1)}:3")
        return zoo.named_mould(m.group(1), int(m.group(2)), **params)
    return parse_mould(text)


# ---------------------------------------------------------------- commands


def cmd_compose(args) -> Report:
    params = parse_params(args.param)
    left = parse_mould_expr(args.left, params)
    right = parse_mould_expr(args.right, params)
    result = ratmould.compose_at(left, args.i, right)
    results = {"rational": format_mould(result), "arity": result.arity}
    try:
        dec = ratmould.decompose_fsym(result, seed=args.seed)
        results["in_span"] = True
        results["fsym"] = str(dec)
        results["decomposition"] = _fsym_dict(dec)
    except (NotInSpanError, HigherPoleError) as exc:
        results["in_span"] = False
        results["span_error"] = str(exc)
    return Report("compose", {"left": args.left, "i": args.i, "right": args.right}, results)


def cmd_zoo(args) -> Report:
    params = parse_params(args.param)
    fam = zoo.family(args.mould, **params)
    m = fam(args.n)
    results = {"mould": format_mould(m)}
    ok = None
    if args.check == "alternal":
        ok = zoo.alternality_check(m, seed=args.seed)
        results["alternal"] = ok
    elif args.check == "symmetral":
        ok = zoo.symmetrality_check(fam, args.n, seed=args.seed)
        results["symmetral"] = ok
    else:
        try:
            dec = ratmould.decompose_fsym(m, seed=args.seed)
            results["decomposition"] = _fsym_dict(dec)
        except (NotInSpanError, HigherPoleError) as exc:
            results["decomposition"] = None
            results["span_error"] = str(exc)
    shown = {k: _text(v) for k, v in sorted(params.items())}
    return Report("zoo", {"mould": args.mould, "n": args.n, "check": args.check, "param": shown}, results, ok)


def ncsf_table(kind: str, degree: int) -> dict:
    if kind == "zassenhaus":
        return {f"Z{k}": _series_dict(z) for k, z in enumerate(ncsf.zassenhaus(degree), 1)}
    if kind == "phi-q":
        return {format_perm(s): _text(c) for s, c in sorted(ncsf.phi_q(degree).items())}
    fn = {
        "s-lambda": ncsf.s_in_lambda,
        "s-psi": ncsf.s_in_psi,
        "magnus": ncsf.psi_in_phi,
        "bch": ncsf.phi_in_psi,
    }[kind]
    return {str(n): {_comp_key(I): _text(c) for I, c in fn(n).items()} for n in range(1, degree + 1)}


def cmd_table(args) -> Report:
    params = parse_params(args.param)
    n = args.n
    kind = args.kind
    if kind in NCSF_TABLES:
        deg = args.degree if kind != "phi-q" else (n or args.degree)
        results = ncsf_table(kind, deg)
    elif kind == "a006013":
        results = {"sequence": nct.a006013_prefix(n), "basis_counts": [nct.lalg_basis_count(k) for k in range(1, n + 1)]}
    elif kind == "nif-counts":
        results = {"sequence": [len(nct.enumerate_nif(k)) for k in range(1, n + 1)]}
    else:
        if args.q is not None:
            q = _parse_value(args.q)
            if q is not None:
                params["q"] = q
        name = {"po": "PO", "solomon": "Solomon", "qsolomon": "QSolomon", "dynkin": "Dynkin"}[kind]
        m = zoo.named_mould(name, n, **params)
        results = _fsym_dict(ratmould.decompose_fsym(m, seed=args.seed))
    basis = NCSF_BASIS.get(kind, "f")
    return Report("table", {"kind": kind, "n": n, "degree": args.degree}, results, basis=basis)


def cmd_ncsf(args) -> Report:
    results = ncsf_table(args.table, args.degree)
    return Report("ncsf", {"table": args.table, "degree": args.degree}, results, basis=NCSF_BASIS[args.table])


# ---------------------------------------------------------------- verification suites


def suite_tamari(max_n: int, seed: int, **_) -> dict:
    rows = []
    for n in range(1, max_n + 1):
        forests = nct.enumerate_nif(n)
        intervals = patterns = lemma = True
        for f in forests:
            rep = nct.tamari_interval_of(f)
            intervals &= rep.is_interval
            patterns &= rep.min_avoids_312 and rep.max_avoids_132
            lemma &= ratmould.equal(nct.nif_mould(f), fqsym.to_rational(nct.extension_element(f)), seed=seed)
        rows.append({"n": n, "forests_checked": len(forests), "intervals_ok": intervals, "pattern_ok": patterns, "lemma_ok": lemma})
    ok = all(r["intervals_ok"] and r["pattern_ok"] and r["lemma_ok"] for r in rows)
    return {"rows": rows, "ok": ok}


def suite_alternal(max_n: int, seed: int, **_) -> dict:
    rng = random.Random(seed)
    qs = [Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(3)]
    qs = [q if q not in (0, 1, -1) else q + Fraction(1, 7) for q in qs]
    checks = {}
    for n in range(2, max_n + 1):
        checks[f"Solomon:{n}"] = zoo.alternality_check(zoo.named_mould("Solomon", n), seed=seed)
        checks[f"Dynkin:{n}"] = zoo.alternality_check(zoo.named_mould("Dynkin", n), seed=seed)
        for q in qs:
            checks[f"QSolomon:{n}:q={q}"] = zoo.alternality_check(zoo.named_mould("QSolomon", n, q=q), seed=seed)
        checks[f"TimeOrdered-symmetral:{n}"] = zoo.symmetrality_check(zoo.family("TimeOrdered"), n, seed=seed)
    checks["Uniform-not-alternal:2"] = not zoo.alternality_check(zoo.named_mould("Uniform", 2), seed=seed)
    return {"checks": checks, "ok": all(checks.values())}


def suite_gamma(max_n: int, seed: int, **_) -> dict:
    F = fqsym.FQSymElement.from_words
    checks = {
        "gamma f_1432": fqsym.gamma_fsym(F([(1, 4, 3, 2)])) == F([(2, 1, 3, 4), (1, 2, 3, 4), (1, 3, 2, 4), (1, 3, 4, 2)], -1),
        "gamma f_2143": fqsym.gamma_fsym(F([(2, 1, 4, 3)]))
        == F([(3, 2, 1, 4), (3, 1, 2, 4), (3, 1, 4, 2), (1, 3, 4, 2), (1, 3, 2, 4), (1, 4, 3, 2)]),
    }
    for n in range(1, max_n + 1):
        order = cyclic = True
        for sigma in fqsym.all_permutations(n):
            x = start = fqsym.FQSymElement.basis(sigma)
            for _ in range(n + 1):
                x = fqsym.gamma_fsym(x)
            order &= x == start
            if n <= 4:
                cyclic &= fqsym.gamma_fsym(start) == fqsym.gamma_rational(start)
        checks[f"gamma^{n + 1}=id:{n}"] = order
        if n <= 4:
            checks[f"combinatorial=rational:{n}"] = cyclic
    return {"checks": checks, "ok": all(checks.values())}


def suite_hooks(max_n: int, seed: int, **_) -> dict:
    checks = {}
    for n in range(1, max_n + 1):
        sizes = all(len(treemould.sylvester_class(t)) == treemould.hook_count(t) for t in treemould.enumerate_trees(n))
        checks[f"class-size=hooks:{n}"] = sizes
        if n <= 5:
            checks[f"tree-mould=class-sum:{n}"] = all(
                ratmould.equal(treemould.tree_mould(t), fqsym.to_rational(treemould.pbt_element(t)), seed=seed)
                for t in treemould.enumerate_trees(n)
            )
    return {"checks": checks, "ok": all(checks.values())}


def suite_ncsf(degree: int, max_n: int, **_) -> dict:
    N = max(degree, 3)
    Z = ncsf.zassenhaus(N)
    g = lambda i: FreeSeries.gen(i, N)
    checks = {"Z3": Z[2] == g(3) + bracket(g(2), g(1)) * Fraction(1, 2)}
    if N >= 4:
        checks["Z4"] = Z[3] == g(4) + bracket(g(3), g(1)) * Fraction(1, 3) + bracket(bracket(g(2), g(1)), g(1)) * Fraction(1, 6)
    if N >= 5:
        checks["Z5 has -7/24 [Psi2,[Psi2,Psi1]]"] = Z[4][(1, 2, 2)] == Fraction(-7, 24) and Z[4][(2, 2, 1)] == Fraction(-7, 24)
    checks["Z lie"] = all(is_lie(z) for z in Z)
    ident = True
    for n in range(1, N + 1):
        x = FreeSeries.gen(n, N)
        via = ncsf.substitute_generators(ncsf.substitute_generators(x, ncsf.psi_as_phi), ncsf.phi_as_psi)
        ident &= via == x
    checks["magnus o bch = id"] = ident
    checks["sigma lambda(-1) = 1"] = ncsf.s_via_lambda(N) * ncsf.lambda_series_signed(N) == FreeSeries.one(N)
    checks["klyachko"] = all(r == 0 for n in range(1, max_n + 1) for r in ncsf.klyachko_remainders(n).values())
    return {"checks": checks, "ok": all(checks.values())}


SUITE_FUNCS: dict[str, Callable[..., dict]] = {
    "tamari": suite_tamari,
    "alternal": suite_alternal,
    "gamma": suite_gamma,
    "hooks": suite_hooks,
    "ncsf": suite_ncsf,
}


def cmd_verify(args) -> Report:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = {name: SUITE_FUNCS[name](max_n=args.max_n, degree=args.degree, seed=args.seed) for name in names}
    ok = all(r["ok"] for r in results.values())
    return Report("verify", {"suite": args.suite, "max_n": args.max_n, "degree": args.degree, "seed": args.seed}, results, ok)


# ---------------------------------------------------------------- output


def _latex_coeff(text: str) -> str:
    if re.fullmatch(r"-?\d+/\d+", text):
        sign = "-" if text.startswith("-") else ""
        p, q = text.lstrip("-").split("/")
        return f"{sign}\\frac{{{p}}}{{{q}}}"
    return text.replace("**", "^").replace("*", " ")


def _latex_key(key: str, basis: str) -> str:
    if basis == "f" and re.fullmatch(r"[\d,]+", key):
        return f"f_{{{key}}}"
    if re.fullmatch(r"[\d,]+", key):
        return f"\\{basis}^{{({key})}}"
    return key


def to_latex(obj, depth: int = 0, basis: str = "f") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append("%" + " " * depth + str(k))
                lines.extend(to_latex(v, depth + 1, basis))
            else:
                lines.append(f"{_latex_key(str(k), basis)} &= {_latex_coeff(str(v))} \\\\")
    elif isinstance(obj, list):
        for v in obj:
            lines.extend(to_latex(v, depth + 1, basis) if isinstance(v, (dict, list)) else [str(v) + " \\\\"])
    else:
        lines.append(_latex_coeff(str(obj)))
    return lines


def to_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + ", ".join(map(str, obj)))
        else:
            for v in obj:
                lines.extend(to_text(v, indent + 1))
                lines.append("")
    else:
        lines.append(pad + str(obj))
    return lines


def render(report: Report, fmt: str) -> str:
    data = report.as_dict()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2)
    if fmt == "latex":
        return "\n".join(["\\begin{align*}"] + to_latex(data["results"], basis=report.basis) + ["\\end{align*}"])
    return "\n".join(to_text(data))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--param", action="append", metavar="NAME=RATIONAL", help="mould parameter; repeatable")
    common.add_argument("--timing", action="store_true", help="include elapsed time (breaks byte-stable output)")

    parser = argparse.ArgumentParser(prog="moulds", description="Exact rational moulds and their combinatorics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="operadic composition left o_i right")
    p.add_argument("--left", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("verify", parents=[common], help="run an exhaustive verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--degree", type=int, default=5)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="decomposition tables, NCSF matrices, sequences")
    p.add_argument("--kind", choices=TABLES, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--q", default=None, help="'symbolic' or an exact rational")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("zoo", parents=[common], help="build a named mould and check it")
    p.add_argument("--mould", choices=zoo.NAMES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", choices=("alternal", "symmetral", "decompose"), default="decompose")
    p.set_defaults(handler=cmd_zoo)

    p = sub.add_parser("ncsf", parents=[common], help="noncommutative symmetric function tables")
    p.add_argument("--table", choices=NCSF_TABLES, required=True)
    p.add_argument("--degree", type=int, default=4)
    p.set_defaults(handler=cmd_ncsf)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        report = args.handler(args)
    except (ParseError, ParamError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MouldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report.elapsed = time.perf_counter() - start
    print(render(report, args.format))
    return 1 if report.ok is False else 0


if __name__ == "__main__":
    sys.exit(main())
