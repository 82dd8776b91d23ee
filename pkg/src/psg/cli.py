"""Command line front end: JSON in, JSON report out.

Exit codes: 0 all checks pass, 1 a mathematical counterexample or negative
verdict, 2 malformed input or an unusable field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import exact_linear as el
from .coordinatize import Coordinatization, CoordinatizationError, Embedding, coordinatization
from .enveloping import generator_relations, u_poisson_gn, verify_matrix_algebra
from .grassmann import gn_structure_constants, parse_element, pg_bracket, pg_mul
from .kantor import PreconditionError, contact_from_jordan, jordan_from_contact, kantor_double, kantor_module
from .modules import (
    SuperModule,
    check_module,
    decompose,
    find_isomorphism,
    gn_beta,
    gn_beta_jordan,
    identify_contact_irrep,
    IdentificationError,
    irreducibility,
    m_alpha,
    opposite,
    regular_module,
)
from .pipeline import golden_pipeline
from .superalgebra import IDENTITIES, SUITES, SuperAlgebra, check_identity, check_suite, find_ideal, is_simple


class InputError(Exception):
    pass


class Report:
    def __init__(self, argv: list[str], timings: bool = False):
        self.command = list(argv)
        self.checks: list[dict] = []
        self.data: dict = {}
        self.timings = timings
        self._t = time.perf_counter()
        self.field_name = el.field().name

    def add(self, name: str, passed: bool, **payload) -> None:
        entry = {"name": name, "verdict": "pass" if passed else "fail"}
        entry.update(payload)
        if self.timings:
            now = time.perf_counter()
            entry["elapsed"] = round(now - self._t, 4)
            self._t = now
        self.checks.append(entry)

    def add_identity(self, rep) -> None:
        payload = rep.to_json()
        payload.pop("name", None)
        payload.pop("verdict", None)
        self.add(rep.name, rep.passed, **payload)

    @property
    def passed(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)

    def to_json(self) -> dict:
        out = {"command": self.command, "field": self.field_name, "checks": self.checks}
        out.update(self.data)
        if "error" in self.data:
            out["overall"] = "error"
        else:
            out["overall"] = "pass" if self.passed else "fail"
        return out


# --------------------------------------------------------------------------
# IO helpers


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh), Path(path).parent
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_algebra(path: str) -> SuperAlgebra:
    data, _ = _read_json(path)
    try:
        return SuperAlgebra.from_json(data)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_module(path: str) -> SuperModule:
    data, base = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: module JSON must be an object")
    alg = data.get("algebra")
    try:
        if isinstance(alg, str):
            algebra = load_algebra(str(base / alg))
            return SuperModule.from_json(data, algebra=algebra)
        return SuperModule.from_json(data)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write(path: str | None, obj) -> None:
    if path is None:
        return
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=False)
        fh.write("\n")


def _scalar_arg(text: str):
    try:
        return el.parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {text!r}: {exc}") from exc


def _artifact(report: Report, args, obj) -> None:
    if getattr(args, "emit", None):
        _write(args.emit, obj)
        report.data["emitted"] = args.emit
    else:
        report.data["artifact"] = obj


# --------------------------------------------------------------------------
# subcommands


def cmd_gn(args, report: Report) -> None:
    if not 0 <= args.n <= 10:
        raise InputError("export supports 0 <= n <= 10")
    g = gn_structure_constants(args.n)
    report.data["dim"] = g.dim
    if args.check:
        for rep in check_suite(g, "poisson"):
            report.add_identity(rep)
    if args.simple:
        simple = is_simple(g)
        ideal = None if simple else find_ideal(g)
        report.add("simple", simple, ideal=_vecs(ideal))
    _artifact(report, args, g.to_json())


def _vecs(vs):
    if vs is None:
        return None
    return [{str(k): el.format_scalar(v) for k, v in sorted(x.items())} for x in vs]


def cmd_kantor(args, report: Report) -> None:
    a = load_algebra(args.algebra)
    if a.bracket is None:
        raise InputError("Kantor double needs an algebra with a bracket")
    k = kantor_double(a)
    report.data["dim"] = k.dim
    if args.check:
        for rep in check_suite(k, "jordan"):
            report.add_identity(rep)
    _artifact(report, args, k.to_json())


def cmd_convert(args, report: Report) -> None:
    a = load_algebra(args.algebra)
    if a.bracket is None:
        raise InputError("algebra has no bracket")
    conv = jordan_from_contact if args.to == "jordan" else contact_from_jordan
    try:
        out = conv(a, check=not args.no_check)
    except PreconditionError as exc:
        report.add_identity(exc.report)
        return
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    suite = "jordan-bracket" if args.to == "jordan" else "contact"
    for rep in check_suite(out, suite):
        report.add_identity(rep)
    _artifact(report, args, out.to_json())


def cmd_check(args, report: Report) -> None:
    a = load_algebra(args.algebra)
    if args.identity:
        if args.identity not in IDENTITIES:
            raise InputError(f"unknown identity {args.identity!r}; known: {sorted(IDENTITIES)}")
        reps = [check_identity(a, args.identity)]
    else:
        if args.suite not in SUITES:
            raise InputError(f"unknown suite {args.suite!r}; known: {sorted(SUITES)}")
        reps = check_suite(a, args.suite)
    for rep in reps:
        report.add_identity(rep)


def _build_module(args) -> SuperModule:
    kind = args.construct
    if kind in ("gn-beta", "gn-beta-jordan", "m-alpha", "reg") and args.n is None:
        raise InputError(f"{kind} needs --n")
    if kind == "gn-beta":
        return gn_beta(args.n, _scalar_arg(args.beta))
    if kind == "gn-beta-jordan":
        return gn_beta_jordan(args.n, _scalar_arg(args.beta))
    if kind == "m-alpha":
        return m_alpha(args.n, _scalar_arg(args.alpha))
    if kind == "reg":
        return regular_module(gn_structure_constants(args.n))
    if not args.module:
        raise InputError(f"{kind} needs --module")
    v = load_module(args.module)
    if kind == "opposite":
        return opposite(v)
    if kind == "kan":
        try:
            return kantor_module(v.algebra, v)
        except PreconditionError as exc:
            raise _MathFailure(exc.report) from exc
    return v  # load


class _MathFailure(Exception):
    def __init__(self, rep):
        self.report = rep


def cmd_module(args, report: Report) -> None:
    try:
        v = _build_module(args)
    except _MathFailure as exc:
        report.add_identity(exc.report)
        return
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.data["dim"] = v.dim
    report.data["kind"] = v.kind
    if args.check:
        report.add_identity(check_module(v))
    if args.irreducible:
        irr = irreducibility(v)
        report.add("irreducible", irr.irreducible, closure_dim=irr.closure_dim, note=irr.verdict, witness=_vecs(irr.witness))
    _artifact(report, args, v.to_json())


def cmd_env(args, report: Report) -> None:
    if not 1 <= args.n <= 4:
        raise InputError("env supports 1 <= n <= 4")
    env = u_poisson_gn(args.n)
    rels = generator_relations(env)
    for name, ok in rels.items():
        report.add(f"relation-{name}", ok)
    ver = verify_matrix_algebra(env.algebra, representation=args.n <= 3)
    report.add(
        "matrix-algebra",
        ver.verdict == "true",
        k=ver.k,
        center_dim=ver.center_dim,
        simple=ver.simple,
        graded_split=list(ver.graded_split) if ver.graded_split else None,
        notes=ver.notes,
    )
    report.data["dim"] = env.algebra.dim
    _artifact(report, args, env.algebra.to_json())


def cmd_coordinatize(args, report: Report) -> None:
    p = load_algebra(args.algebra)
    data, _ = _read_json(args.embedding)
    try:
        emb = Embedding.from_json(data, dim=p.dim)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{args.embedding}: {exc}") from exc
    try:
        res: Coordinatization = coordinatization(p, emb)
    except CoordinatizationError as exc:
        report.add("coordinatization", False, reason=str(exc), trace=exc.trace)
        return
    except ValueError as exc:
        report.add("coordinatization", False, reason=str(exc))
        return
    report.add("coordinatization", True, dim_a=res.a.dim, homomorphism_tuples=res.report.tuples_checked)
    report.data["a_basis"] = _vecs(res.a_basis)
    _write(args.out, res.a.to_json())
    _write(args.witness, {"rows": res.witness.rows, "cols": res.witness.cols, "entries": res.witness.to_json()})
    if args.out is None:
        report.data["artifact"] = res.a.to_json()


def cmd_iso(args, report: Report) -> None:
    v, w = load_module(args.left), load_module(args.right)
    try:
        res = find_isomorphism(v, w, args.parity, bound=args.bound, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"status": res.status, "solution_dim": res.solution_dim, "note": res.note}
    if res.found:
        payload["parity"] = res.parity
        payload["witness"] = res.witness.to_json()
    report.add("isomorphism", res.found, **payload)


def cmd_decompose(args, report: Report) -> None:
    v = load_module(args.module)
    try:
        res = decompose(v)
    except ValueError as exc:
        report.add("decompose", False, reason=str(exc))
        return
    report.add(
        "decompose",
        True,
        components=[{"tag": t, "dim": len(b), "basis": _vecs(b)} for b, t in res.components],
    )


def cmd_identify(args, report: Report) -> None:
    v = load_module(args.module)
    try:
        prof = identify_contact_irrep(v, seed=args.seed)
    except IdentificationError as exc:
        report.add("identify", False, reason=str(exc))
        return
    report.add(
        "identify",
        True,
        alpha=el.format_scalar(prof.alpha),
        beta=el.format_scalar(prof.beta),
        flag=prof.flag,
        convention="h(1) = alpha Id, beta = -alpha/2",
        closed_form_map=prof.complement_ok,
        notes=prof.notes,
        witness=prof.witness.to_json(),
    )


def cmd_golden(args, report: Report) -> None:
    res = golden_pipeline(args.n, _scalar_arg(args.alpha), seed=args.seed)
    payload = res.to_json()
    payload["outcome"] = payload.pop("verdict")
    report.add("golden", res.passed, **payload)


def cmd_bracket(args, report: Report) -> None:
    try:
        f = parse_element(args.f, args.m, args.n)
        g = parse_element(args.g, args.m, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.data["product"] = str(pg_mul(f, g))
    report.data["bracket"] = str(pg_bracket(f, g))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psg", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--timings", action="store_true", help="add elapsed seconds to each check")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS)
        p.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
        return p

    p = common(sub.add_parser("gn", help="export G_n structure constants"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit")
    p.add_argument("--check", action="store_true")
    p.add_argument("--simple", action="store_true")
    p.set_defaults(func=cmd_gn)

    p = common(sub.add_parser("kantor", help="Kantor double of an algebra with bracket"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--emit")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_kantor)

    p = common(sub.add_parser("convert-bracket", help="contact <-> Jordan bracket conversion"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--to", choices=("jordan", "contact"), required=True)
    p.add_argument("--no-check", action="store_true")
    p.add_argument("--emit")
    p.set_defaults(func=cmd_convert)

    p = common(sub.add_parser("check", help="run an identity or suite"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--suite", default="poisson")
    p.add_argument("--identity")
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("module", help="build, load or transform a supermodule"))
    p.add_argument("construct", choices=("gn-beta", "gn-beta-jordan", "m-alpha", "reg", "opposite", "kan", "load"))
    p.add_argument("--n", type=int)
    p.add_argument("--beta", default="0")
    p.add_argument("--alpha", default="0")
    p.add_argument("--module")
    p.add_argument("--check", action="store_true")
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--emit")
    p.set_defaults(func=cmd_module)

    p = common(sub.add_parser("env", help="U(G_n) as a Clifford algebra"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit")
    p.set_defaults(func=cmd_env)

    p = common(sub.add_parser("coordinatize", help="split P = A (x) G_n"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_coordinatize)
    # --out here names the A artifact; the report then goes to stdout
    p.set_defaults(report_to_stdout=True)

    p = common(sub.add_parser("iso", help="search for a module isomorphism"))
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--parity", choices=("even", "odd", "any"), default="even")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_iso)

    p = common(sub.add_parser("decompose", help="split a unital Poisson G_n-module"))
    p.add_argument("--module", required=True)
    p.set_defaults(func=cmd_decompose)

    p = common(sub.add_parser("identify", help="parameters of an irreducible contact G_n-module"))
    p.add_argument("--module", required=True)
    p.set_defaults(func=cmd_identify)

    p = common(sub.add_parser("golden", help="match M_alpha against Kan(G~_n(beta))"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_golden)

    p = common(sub.add_parser("bracket", help="product and bracket of two elements of P_m (x) G_n"))
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_bracket)
    return ap


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = Report(argv, timings=args.timings)
    code = 0
    prev = el.field()
    try:
        if os.environ.get("PSG_FIELD"):
            el.set_field(el.field_from_env())
            report.field_name = el.field().name
        args.func(args, report)
        code = 0 if report.passed else 1
    except (InputError, el.DimensionError) as exc:
        report.data["error"] = str(exc)
        code = 2
    except ZeroDivisionError as exc:
        report.data["error"] = f"division by zero in the session field: {exc}"
        code = 2
    except ValueError as exc:
        report.data["error"] = str(exc)
        code = 2
    finally:
        el.set_field(prev)
    payload = json.dumps(report.to_json(), indent=1)
    if getattr(args, "out", None) and not getattr(args, "report_to_stdout", False):
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        stdout.write(payload + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
