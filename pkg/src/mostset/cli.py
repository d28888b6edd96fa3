"""``mostset`` command-line frontend.

Exit status: 0 on success, 1 on domain errors (empty collection, missing
certificate, ...), 2 on malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence, TextIO

from . import density_core as dn
from . import families as fm
from . import hypergraph as hg
from .automata import dfa as da
from .automata import languages as lang
from .density_core import EventuallyPeriodicSet
from .errors import InvalidSpec, MostsetError

SCHEMA = 1
SUBCOMMANDS = ("density", "most", "mostsim", "intersect-most", "acceptance",
               "density-language", "average-state", "estimate")


class UsageError(Exception):
    pass


def _options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", nargs="?", help="input file (same as --input)")
    common.add_argument("--input", help="JSON (or hypergraph text) input file")
    common.add_argument("--set", action="append", default=[], metavar="JSON",
                        help="eventually periodic set as inline JSON; repeatable")
    common.add_argument("--universe", metavar="JSON", help="universe set for 'most' (default: N)")
    common.add_argument("--family", metavar="FILE", help="indexed family spec")
    common.add_argument("--dfas", nargs="+", metavar="FILE", help="DFA or regex spec files")
    common.add_argument("--element", help="element of the family's domain (JSON or bare string)")
    common.add_argument("--word", help="string to test against a language family")
    common.add_argument("--n", type=int, default=1000, help="sample bound / prefix length")
    common.add_argument("--tol", default="1/1000", help="convergence tolerance P/Q")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="mostset", description="Most-intersection toolkit")
    parser.add_argument("--selftest", action="store_true",
                        help="run the bundled examples against golden outputs")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


# -- input helpers ------------------------------------------------------------

def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _input_path(args) -> str:
    path = args.input or args.path
    if not path:
        raise UsageError(f"{args.command}: an input file is required")
    return path


def _sets(args, count: int) -> list[EventuallyPeriodicSet]:
    raw = list(args.set)
    if not raw and (args.input or args.path):
        data = _read_json(_input_path(args))
        raw = data if isinstance(data, list) else [data]
        return [EventuallyPeriodicSet.from_json(x) for x in raw][:count]
    if len(raw) != count:
        raise UsageError(f"{args.command}: expected {count} --set argument(s), got {len(raw)}")
    return [EventuallyPeriodicSet.from_json(json.loads(x)) for x in raw]


def _element(text: str) -> Any:
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        return text
    return value if isinstance(value, (int, str)) and not isinstance(value, bool) else text


def _tol(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad tolerance {text!r}") from exc


def _load_dfa(path: str) -> da.Dfa:
    data = _read_json(path)
    if isinstance(data, dict) and "regex" in data:
        return da.from_regex(data["regex"], data["alphabet"])
    return da.Dfa.from_json(data)


def _load_hypergraph(path: str) -> hg.Hypergraph:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return hg.from_json(json.loads(text))
    return hg.from_text(text)


# -- commands ----------------------------------------------------------------
# each returns (json payload, text lines)

def _cmd_density(args):
    (s,) = _sets(args, 1)
    d = dn.density(s)
    return {"schema": SCHEMA, **dn.density_to_json(d)}, [f"density: {d}"]


def _cmd_most(args):
    (a,) = _sets(args, 1)
    universe = dn.NATURALS
    if args.universe:
        universe = EventuallyPeriodicSet.from_json(json.loads(args.universe))
    verdict = dn.most(universe, a)
    payload = {"schema": SCHEMA, "mode": "exact", "result": verdict}
    return payload, [f"most: {str(verdict).lower()}"]


def _cmd_mostsim(args):
    a, b = _sets(args, 2)
    verdict = dn.most_sim(a, b)
    payload = {"schema": SCHEMA, "mode": "exact", "result": verdict}
    return payload, [f"mostsim: {str(verdict).lower()}"]


def _cmd_intersect_most(args):
    if args.family:
        fam = fm.family_from_json(_read_json(args.family))
        verdicts = fm.indexed_verdicts(fam)
        result = fm.sorted_elements(w for w, (keep, _) in verdicts.items() if keep)
        payload = {
            "schema": SCHEMA, "mode": "exact", "result": result,
            "densities": [{"element": w, **dn.density_to_json(verdicts[w][1])} for w in result],
            "candidates": len(fam.universe),
        }
        return payload, [f"most-intersection: {_show(result)}"]
    sets = fm.collection_from_json(_read_json(_input_path(args)))
    result = fm.sorted_elements(fm.most_intersect_finite(sets))
    payload = {"schema": SCHEMA, "mode": "exact", "result": result}
    return payload, [f"most-intersection: {_show(result)}"]


def _cmd_acceptance(args):
    if not args.family or args.element is None:
        raise UsageError("acceptance: --family and --element are required")
    fam = fm.family_from_json(_read_json(args.family))
    w = _element(args.element)
    bits = fm.acceptance_prefix(fam, w, args.n)
    interp = fm.set_interpretation(fam, w)
    cert = interp.to_json() if isinstance(interp, EventuallyPeriodicSet) else None
    payload = {"schema": SCHEMA, "element": w, "n": args.n, "bits": bits, "certificate": cert}
    return payload, [f"chi({w}) = {''.join(map(str, bits))}..."]


def _cmd_density_language(args):
    if args.dfas:
        dfas = [_load_dfa(p) for p in args.dfas]
        d = da.majority_product(dfas)
        payload = {"schema": SCHEMA, "mode": "exact", "result": d.to_json()}
        lines = [f"density language: {len(d.states)} states, accept {sorted(d.accept)}"]
        lines += [f"  {q} --{a}--> {d.delta[(q, a)]}" for q in d.states for a in d.alphabet]
        return payload, lines
    if args.family and args.word is not None:
        spec = _read_json(args.family)
        if spec.get("kind") != "cumulative_0n1n":
            raise InvalidSpec(f"unknown language family {spec.get('kind')!r}")
        v = lang.density_language_membership(lang.cumulative_0n1n(), args.word)
        payload = {"schema": SCHEMA, "mode": "exact", "word": args.word, "result": v.member,
                   "certificate": v.certificate.to_json(), "density": dn.density_to_json(v.density)}
        return payload, [f"{args.word!r} in density language: {str(v.member).lower()} (density {v.density})"]
    raise UsageError("density-language: give --dfas FILE... or --family FILE --word W")


def _cmd_average_state(args):
    h = _load_hypergraph(_input_path(args))
    state = fm.sorted_elements(hg.average_state(h))
    balanced = not state
    payload = {"schema": SCHEMA, "mode": "exact", "result": state, "balanced": balanced,
               "order": h.order, "size": h.size}
    return payload, [f"average state: {_show(state)}", f"balanced: {str(balanced).lower()}",
                     f"order: {h.order}", f"size: {h.size}"]


def _cmd_estimate(args):
    tol = _tol(args.tol)
    if args.family:
        fam = fm.family_from_json(_read_json(args.family))
        est = fm.most_intersect_estimated(fam, args.n, tol)
        payload = {"schema": SCHEMA, "mode": "estimated", "n": args.n,
                   "tol": dn.density_to_json(tol), **est.to_json()}
        lines = [f"estimated most-intersection (N={args.n}): {_show(fm.sorted_elements(est.members))}"]
        return payload, lines
    (s,) = _sets(args, 1)
    e = dn.partial_density(s, args.n, tol)
    payload = {"schema": SCHEMA, "mode": "estimated", "tol": dn.density_to_json(tol), **e.to_json()}
    return payload, [f"partial density at N={args.n}: {e.partial_value} "
                     f"(converged: {str(e.converged).lower()}, oscillation {e.oscillation})"]


COMMANDS = {
    "density": _cmd_density,
    "most": _cmd_most,
    "mostsim": _cmd_mostsim,
    "intersect-most": _cmd_intersect_most,
    "acceptance": _cmd_acceptance,
    "density-language": _cmd_density_language,
    "average-state": _cmd_average_state,
    "estimate": _cmd_estimate,
}


def _show(items: Sequence[Any]) -> str:
    return "{" + ", ".join(str(x) for x in items) + "}"


def emit(payload: dict, lines: Sequence[str], fmt: str) -> str:
    if fmt == "text":
        return "\n".join(lines) + "\n"
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False) + "\n"


# -- entry points -------------------------------------------------------------

def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _options()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.selftest:
        return selftest(out)
    if not args.command:
        parser.print_usage(err)
        return 2
    try:
        payload, lines = COMMANDS[args.command](args)
    except MostsetError as exc:
        err.write(f"mostset: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except UsageError as exc:
        err.write(f"mostset: usage: {exc}\n")
        return 2
    except json.JSONDecodeError as exc:
        err.write(f"mostset: malformed JSON: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"mostset: cannot read input: {exc}\n")
        return 2
    out.write(emit(payload, lines, args.format))
    return 0


def golden_dir() -> Path:
    return Path(str(resources.files("mostset") / "golden"))


def selftest(out: TextIO) -> int:
    """Replay every bundled example case and compare stdout byte for byte."""
    base = golden_dir()
    cases = json.loads((base / "cases.json").read_text(encoding="utf-8"))
    failures = 0
    for case in cases:
        argv = [a.replace("{golden}", str(base)) for a in case["argv"]]
        buf, errbuf = io.StringIO(), io.StringIO()
        code = run(argv, buf, errbuf)
        ok = code == case.get("exit", 0) and buf.getvalue() == case["stdout"]
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'} {case['name']}\n")
        if not ok:
            out.write(f"  expected: {case['stdout']!r}\n  got:      {buf.getvalue()!r} (exit {code})\n")
    out.write(f"selftest: {len(cases) - failures}/{len(cases)} passed\n")
    return 0 if failures == 0 else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
