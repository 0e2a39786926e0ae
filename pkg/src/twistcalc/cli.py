"""Command line front end.

Verbs: ``normalize``, ``convert``, ``apply``, ``solve``, ``verify``,
``module translate``, ``module check``.  Results go to stdout (``--format
text`` or ``json``); diagnostics go to stderr.  Exit status is 0 on success,
1 when a ``verify`` suite does not pass, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .config import RingConfig, load_config, parse_config
from .errors import ParseError, TwistError
from .oreweyl import (
    COEFFS_ONLY,
    FULL_CENTER,
    GRADED,
    WEYL,
    centralizer_basis,
    graded_to_weyl,
    ore_apply,
    weyl_to_graded,
)
from .semilinmod import (
    DiffModule,
    SigmaModule,
    check_integrability,
    check_sigma_compat,
    diff_to_sigma,
    horizontal_sections,
    mat_str,
    sigma_cohomology,
    sigma_to_diff,
    vector_str,
)
from .twistalg import constants_basis, invariants_basis
from .verify import SUITES, run_suite

TASKS = ("invariants", "constants", "center", "centralizer", "h0h1", "horizontal")
DEFAULT_SEED = 20240917


@dataclass
class SessionOutput:
    command: str
    ring: dict | None
    text: str
    data: object
    bounds: dict = field(default_factory=dict)
    stability: dict = field(default_factory=dict)
    ok: bool = True

    def as_dict(self):
        return {
            "command": self.command,
            "ring": self.ring,
            "result": {"text": self.text, "data": self.data},
            "bounds": self.bounds,
            "stability": self.stability,
            "version": __version__,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.as_dict(), indent=2, sort_keys=True)
        return self.text


# ---------------------------------------------------------------------------
# commands (library level: config in, SessionOutput out)


def cmd_normalize(cfg: RingConfig, operator_expr: str, kind: str | None = None) -> SessionOutput:
    op = cfg.parse_operator(operator_expr, kind)
    return SessionOutput(
        f"normalize {operator_expr}", cfg.summary(), str(op), {"kind": op.alg.kind, "normal_form": str(op)}
    )


def cmd_convert(cfg: RingConfig, operator_expr: str, direction: str | None = None) -> SessionOutput:
    if direction is None:
        direction = "T_to_d" if cfg.operator_kind(operator_expr) == GRADED else "d_to_T"
    if direction == "T_to_d":
        op = cfg.parse_operator(operator_expr, GRADED)
        out = graded_to_weyl(op)
    elif direction == "d_to_T":
        op = cfg.parse_operator(operator_expr, WEYL)
        out = weyl_to_graded(op, cfg.inversive)
    else:
        raise TwistError(f"unknown direction {direction!r}")
    return SessionOutput(
        f"convert {operator_expr}",
        cfg.summary(),
        str(out),
        {"direction": direction, "input": str(op), "output": str(out)},
    )


def cmd_apply(cfg: RingConfig, operator_expr: str, coeff_expr: str) -> SessionOutput:
    op = cfg.parse_operator(operator_expr)
    f = cfg.parse_coeff(coeff_expr)
    out = ore_apply(op, f)
    return SessionOutput(
        f"apply {operator_expr} {coeff_expr}", cfg.summary(), str(out), {"operator": str(op), "argument": str(f), "value": str(out)}
    )


def _basis_text(items):
    return ", ".join(str(b) for b in items) if items else "0"


def cmd_solve(
    cfg: RingConfig,
    task: str,
    bound: int = 4,
    op_bound: int | None = None,
    matrices=None,
    index: int = 1,
) -> SessionOutput:
    bounds = {"bound": bound}
    stability = {}
    if task == "invariants":
        basis = invariants_basis(cfg.twist, bound)
        text = _basis_text(basis)
        data = [str(b) for b in basis]
    elif task == "constants":
        basis = constants_basis(cfg.twist, bound)
        text = _basis_text(basis)
        data = [str(b) for b in basis]
    elif task in ("center", "centralizer"):
        ob = bound if op_bound is None else op_bound
        bounds["op_bound"] = ob
        which = FULL_CENTER if task == "center" else COEFFS_ONLY
        basis = centralizer_basis(cfg.algebra(GRADED), which, bound, ob)
        text = _basis_text(basis)
        data = [str(b) for b in basis]
    elif task == "h0h1":
        mats = [cfg.parse_matrix(m) for m in matrices] if matrices else None
        M = SigmaModule(cfg.twist, tuple(mats)) if mats else SigmaModule.trivial(cfg.twist)
        H0, H1 = sigma_cohomology(M, index - 1, bound)
        h0 = [vector_str(v) for v in H0.basis]
        h1 = [vector_str(v) for v in H1.basis]
        text = f"H0: {', '.join(h0) or '0'}\nH1: {', '.join(h1) or '0'}"
        if not H1.exact:
            text += "  (truncated)"
        data = {"H0": h0, "H1": h1, "H1_exact": H1.exact}
        bounds["index"] = index
        stability = {"H0": H0.stable, "H1": H1.stable}
    elif task == "horizontal":
        mats = [cfg.parse_matrix(m) for m in matrices] if matrices else None
        M = DiffModule(cfg.twist, tuple(mats)) if mats else DiffModule.trivial(cfg.twist)
        rep = horizontal_sections(M, bound)
        vs = [vector_str(v) for v in rep.basis]
        text = ", ".join(vs) or "0"
        data = vs
        stability = {"horizontal": rep.stable}
    else:
        raise TwistError(f"unknown task {task!r}; choose from {', '.join(TASKS)}")
    return SessionOutput(f"solve {task}", cfg.summary(), text, data, bounds, stability)


def cmd_verify(cfg: RingConfig | None, suite: str, seed: int = DEFAULT_SEED, **opts) -> SessionOutput:
    res = run_suite(suite, cfg, seed, **opts)
    line = f"{suite}: {res.status} ({res.checks} checks)"
    if res.counterexample:
        line += f"; first counterexample: {res.counterexample}"
    if res.status == "inexpressible":
        line += f"; {res.details.get('reason', '')}"
    ring = cfg.summary() if cfg is not None else None
    return SessionOutput(f"verify {suite}", ring, line, res.as_dict(), {"seed": seed}, ok=res.passed)


def cmd_module_translate(cfg: RingConfig, sigma=None, diff=None) -> SessionOutput:
    if bool(sigma) == bool(diff):
        raise TwistError("give either --sigma or --diff matrices")
    if sigma:
        M = SigmaModule(cfg.twist, tuple(cfg.parse_matrix(m) for m in sigma))
        out = sigma_to_diff(M)
        label = "N"
    else:
        M = DiffModule(cfg.twist, tuple(cfg.parse_matrix(m) for m in diff))
        out = diff_to_sigma(M)
        label = "S"
    mats = [mat_str(m) for m in out.mats]
    text = "\n".join(f"{label}{i + 1} = {s}" for i, s in enumerate(mats))
    return SessionOutput("module translate", cfg.summary(), text, {label: mats})


def cmd_module_check(cfg: RingConfig, sigma=None, diff=None) -> SessionOutput:
    if bool(sigma) == bool(diff):
        raise TwistError("give either --sigma or --diff matrices")
    if sigma:
        M = SigmaModule(cfg.twist, tuple(cfg.parse_matrix(m) for m in sigma))
        ok, pair = check_sigma_compat(M)
        what = "compatible"
    else:
        M = DiffModule(cfg.twist, tuple(cfg.parse_matrix(m) for m in diff))
        ok, pair = check_integrability(M)
        what = "integrable"
    text = f"{what}: {'yes' if ok else 'no'}"
    if pair is not None:
        text += f" (pair {pair[0] + 1}, {pair[1] + 1})"
    data = {what: ok, "pair": None if pair is None else [pair[0] + 1, pair[1] + 1]}
    return SessionOutput("module check", cfg.summary(), text, data)


# ---------------------------------------------------------------------------
# argument handling


def _common(p):
    p.add_argument("--ring", help="ring configuration file")
    p.add_argument("--ring-text", help="inline ring configuration (';' separates lines)")
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistcalc", description="twisted calculus toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("normalize", help="normal form of an operator expression")
    _common(p)
    p.add_argument("expr", nargs="?", default="-")
    p.add_argument("--kind", choices=(GRADED, WEYL))

    p = sub.add_parser("convert", help="rewrite between T and d presentations")
    _common(p)
    p.add_argument("expr", nargs="?", default="-")
    p.add_argument("--direction", choices=("T_to_d", "d_to_T"))

    p = sub.add_parser("apply", help="apply an operator to a coefficient")
    _common(p)
    p.add_argument("expr")
    p.add_argument("arg", nargs="?", default="-")

    p = sub.add_parser("solve", help="degree-bounded kernel computations")
    _common(p)
    p.add_argument("task", choices=TASKS)
    p.add_argument("--bound", type=int, default=4, help="total degree bound on coefficients")
    p.add_argument("--op-bound", type=int, help="operator degree bound (center, centralizer)")
    p.add_argument("--matrix", action="append", help="module matrix, one per twist")
    p.add_argument("--index", type=int, default=1, help="twist index for h0h1 (1-based)")

    p = sub.add_parser("verify", help="run an identity suite")
    _common(p)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--max-k", type=int, default=12)
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--polynomial-base", action="store_true", help="confluence: forbid denominators in the parameter")

    p = sub.add_parser("module", help="twisted module utilities")
    msub = p.add_subparsers(dest="action", required=True)
    for name in ("translate", "check"):
        q = msub.add_parser(name)
        _common(q)
        q.add_argument("--sigma", action="append", help="sigma matrix S_i (repeat per twist)")
        q.add_argument("--diff", action="append", help="connection matrix N_i (repeat per twist)")
    return ap


def _read(value, stdin):
    if value == "-":
        return stdin.read().strip()
    return value


def _config(args, required=True):
    if args.ring and args.ring_text:
        raise TwistError("use only one of --ring and --ring-text")
    if args.ring:
        return load_config(args.ring)
    if args.ring_text:
        return parse_config(args.ring_text)
    if required:
        raise TwistError("a ring configuration is required (--ring FILE)")
    return None


def dispatch(args, stdin=sys.stdin) -> SessionOutput:
    if args.verb == "normalize":
        return cmd_normalize(_config(args), _read(args.expr, stdin), args.kind)
    if args.verb == "convert":
        return cmd_convert(_config(args), _read(args.expr, stdin), args.direction)
    if args.verb == "apply":
        if args.expr == "-" and args.arg == "-":
            raise TwistError("only one of the operator and its argument can come from stdin")
        return cmd_apply(_config(args), _read(args.expr, stdin), _read(args.arg, stdin))
    if args.verb == "solve":
        return cmd_solve(_config(args), args.task, args.bound, args.op_bound, args.matrix, args.index)
    if args.verb == "verify":
        cfg = _config(args, required=args.suite != "confluence")
        return cmd_verify(
            cfg,
            args.suite,
            args.seed,
            trials=args.trials,
            max_k=args.max_k,
            max_n=args.max_n,
            polynomial_base=args.polynomial_base,
        )
    if args.verb == "module":
        cfg = _config(args)
        if args.action == "translate":
            return cmd_module_translate(cfg, args.sigma, args.diff)
        return cmd_module_check(cfg, args.sigma, args.diff)
    raise TwistError(f"unknown verb {args.verb!r}")


def main(argv=None, stdin=sys.stdin, stdout=sys.stdout, stderr=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = dispatch(args, stdin)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=stderr)
        return 2
    except (TwistError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    print(out.render(args.format), file=stdout)
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
