"""Command-line driver: parse a task file, run its tasks, render the report."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .bounds import BoundInputs, evaluate_bounds, verify_proof_chain
from .dsl import Task, TaskFile, parse_taskfile
from .errors import FrobMultError, NotArtinian, NotPPower
from .families import FAMILIES, ExampleSpec
from .ffpoly import is_power_of, log_p
from .frobenius import (
    ParameterIdeal,
    RingPresentation,
    fte_lower_bound_sample,
    frobenius_closure,
    verify_closure,
)
from .groebner import DEFAULT_DEGREE_CAP
from .invariants import analyze_invariants, is_system_of_parameters

DEFAULT_E_MAX = 10


@dataclass
class Options:
    seed: int = 0
    e_max: int = DEFAULT_E_MAX
    degree_cap: int = DEFAULT_DEGREE_CAP
    timing: bool = False


@dataclass
class Report:
    taskfile: TaskFile
    results: list[dict] = field(default_factory=list)
    seed: int = 0
    version: str = __version__

    @property
    def failed(self) -> bool:
        return any(not r["ok"] for r in self.results)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> dict:
        return {"version": self.version, "seed": self.seed, "input": self.taskfile.to_json(),
                "results": self.results, "exit_code": self.exit_code}


# -- task implementations ----------------------------------------------------


def _ring(tf: TaskFile, opts: Options) -> RingPresentation:
    return RingPresentation.from_strings(tf.p, tf.variables, tf.relations, degree_cap=opts.degree_cap)


def _params_q(R: RingPresentation, params: dict) -> ParameterIdeal | None:
    if "q" not in params:
        return None
    return ParameterIdeal([R.parse(g) for g in params["q"]])


def _pipeline(R: RingPresentation, q: ParameterIdeal | None, flags, params: dict, opts: Options, *,
              fte_bound: int | None = None, closed_form_fte: int | None = None) -> dict:
    """sop check, reduction check, invariants, closure, bounds, proof chain."""
    e_max = params.get("e_max", opts.e_max)
    inv = analyze_invariants(R, q, flags, n_cap=params.get("n_cap", 20), seed=opts.seed)
    out: dict = {"invariants": inv.to_json()}
    if inv.d == 0:
        out["bounds"] = None
        out["notes"] = ["Artinian ring: bound formulas need d >= 1"]
        return out
    q = inv.reduction
    closure = frobenius_closure(R, q, e_max, params.get("patience", 2), fte_bound)
    out["closure"] = {**closure.to_json(), "self_check": verify_closure(R, closure)["ok"]}
    if "Q" in params:
        if not is_power_of(params["Q"], R.p):
            raise NotPPower(f"Q = {params['Q']} is not a power of {R.p}")
        exponent, provenance = log_p(params["Q"], R.p), "user_asserted"
    elif closed_form_fte is not None:
        exponent, provenance = closed_form_fte, "closed_form_family"
    else:
        # fte of one parameter ideal only bounds Fte(R) from below
        exponent, provenance = closure.fte, "sampled_lower_bound"
    inputs = BoundInputs(inv.d, inv.v, inv.s, exponent, R.p, provenance)
    report = evaluate_bounds(inv, inputs)
    out["bounds"] = report.to_json()
    out["violated"] = [b.name for b in report.violated]
    chains = []
    if inv.cm:
        ls = [params["l"]] if "l" in params else list(range(1, inv.d + 1))
        for l in ls:
            chains.append(verify_proof_chain(R, q, inputs.Q, l, inv, closure).to_json())
    out["chain"] = chains
    return out


def _task_analyze(tf: TaskFile, params: dict, opts: Options) -> dict:
    R = _ring(tf, opts)
    return _pipeline(R, _params_q(R, params), params.get("flags", ()), params, opts)


def _task_bounds(tf: TaskFile, params: dict, opts: Options) -> dict:
    out = _task_analyze(tf, params, opts)
    return {k: out[k] for k in ("invariants", "bounds", "violated", "chain") if k in out}


def _task_closure(tf: TaskFile, params: dict, opts: Options) -> dict:
    R = _ring(tf, opts)
    q = _params_q(R, params)
    if not is_system_of_parameters(R, q):
        raise NotArtinian(f"{q.strings()} is not a system of parameters")
    res = frobenius_closure(R, q, params.get("e_max", opts.e_max), params.get("patience", 2),
                            params.get("fte_bound"))
    return {"closure": {**res.to_json(), "self_check": verify_closure(R, res)["ok"]}}


def _task_sample(tf: TaskFile, params: dict, opts: Options) -> dict:
    R = _ring(tf, opts)
    res = fte_lower_bound_sample(R, params.get("trials", 5), params.get("seed", opts.seed),
                                 params.get("e_max", opts.e_max), patience=params.get("patience", 2))
    return {"sample": res.to_json()}


_FAMILY_KEYS = {"monomial_hypersurface": ("p", "a"),
                "random_artinian_ci": ("p", "n_vars", "max_deg", "seed", "free")}


def _compare_expected(spec: ExampleSpec, out: dict) -> dict:
    inv = out["invariants"]
    got = {"d": inv["d"], "v": inv["v"], "s": inv["s"], "e": inv["e"], "cm": inv["cm"],
           "length": inv["length"], "hilbert_numerator": inv.get("hilbert", {}).get("numerator")}
    checks = {}
    for key, exp in sorted(spec.expected.items()):
        checks[key] = {"expected": exp.value, "got": got.get(key), "provenance": exp.provenance,
                       "match": got.get(key) == exp.value}
    if spec.expected_fte is not None and "closure" in out:
        fte = out["closure"]["fte"]
        checks["fte_ceiling"] = {"expected": spec.expected_fte.value, "got": fte,
                                 "provenance": spec.expected_fte.provenance,
                                 "match": fte <= spec.expected_fte.value}
    return checks


def _task_family(tf: TaskFile, params: dict, opts: Options) -> dict:
    name = params["name"]
    if name not in FAMILIES:
        raise FrobMultError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    args = {k: params[k] for k in _FAMILY_KEYS[name] if k in params}
    spec = FAMILIES[name](**args)
    R = spec.ring
    if R.degree_cap != opts.degree_cap:
        R = RingPresentation(R.ring, R.relations.gens, opts.degree_cap)
    fte = spec.expected_fte.value if spec.expected_fte else None
    out = _pipeline(R, spec.suggested_q, tuple(spec.flags), params, opts,
                    fte_bound=fte, closed_form_fte=fte)
    out["family"] = spec.to_json()
    out["expected_check"] = _compare_expected(spec, out)
    if "trials" in params and out["invariants"]["d"] >= 1:
        sample = fte_lower_bound_sample(R, params["trials"], opts.seed, params.get("e_max", opts.e_max),
                                        include=[spec.suggested_q.generators] if spec.suggested_q else ())
        out["sample"] = sample.to_json()
        if fte is not None:
            out["expected_check"]["sampled_fte_ceiling"] = {
                "expected": fte, "got": sample.max_fte, "provenance": spec.expected_fte.provenance,
                "match": sample.max_fte <= fte}
    return out


TASKS = {"analyze": _task_analyze, "bounds": _task_bounds, "closure": _task_closure,
         "family": _task_family, "sample_fte": _task_sample}


def run_task(tf: TaskFile, index: int, opts: Options) -> dict:
    """Run one task; errors become data."""
    task: Task = tf.tasks[index]
    start = time.perf_counter()
    entry: dict = {"index": index, "task": task.name}
    try:
        result = TASKS[task.name](tf, task.params, opts)
        entry["result"] = result
        problems = []
        if result.get("violated"):
            problems.append("violated bounds: " + ", ".join(result["violated"]))
        mismatched = [k for k, c in result.get("expected_check", {}).items() if not c["match"]]
        if mismatched:
            problems.append("expectation mismatch: " + ", ".join(mismatched))
        entry["ok"] = not problems
        if problems:
            entry["error"] = {"type": "CheckFailed", "message": "; ".join(problems)}
    except (FrobMultError, ValueError, OverflowError) as exc:
        entry["ok"] = False
        entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
    if opts.timing:
        entry["seconds"] = round(time.perf_counter() - start, 3)
    return entry


def run(tf: TaskFile, opts: Options | None = None, jobs: int = 1) -> Report:
    """Execute all tasks; results are ordered by task index regardless of ``jobs``."""
    opts = opts or Options()
    n = len(tf.tasks)
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_task, [tf] * n, range(n), [opts] * n))
    else:
        results = [run_task(tf, i, opts) for i in range(n)]
    return Report(tf, results, opts.seed)


# -- rendering ---------------------------------------------------------------


def render_json(report: Report) -> str:
    return json.dumps(report.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def _bound_row(b: dict) -> str:
    if not b["applicable"]:
        verdict = "n/a"
    else:
        verdict = "holds" if b["holds"] else "VIOLATED"
    row = [b["name"], b["value"], verdict, "tight" if b["tight"] else "-"]
    if b["conditional"] and b["applicable"]:
        row.append("(conditional: Q from a lower bound)")
    if b.get("reason"):
        row.append(f"({b['reason']})")
    return "  ".join(row)


def _render_result(res: dict, lines: list[str]) -> None:
    inv = res.get("invariants")
    if inv:
        lines.append(f"  d: {inv['d']}  v: {inv['v']}  s: {inv['s']}  e: {inv['e']}  length: {inv['length']}")
        if inv["cm"] is None:
            lines.append("  cm: unverified (no reduction witness)")
        else:
            red = inv.get("reduction")
            witness = f" (reduction {', '.join(red['gens'])}, reduction number {red['rn']})" if red else ""
            lines.append(f"  cm: {'true' if inv['cm'] else 'false'}{witness}")
        if inv.get("hilbert"):
            h = inv["hilbert"]
            lines.append(f"  hilbert: numerator {h['numerator']}, dim {h['dim']}")
        if inv["flags"]:
            lines.append(f"  flags: {', '.join(inv['flags'])}")
        for note in inv.get("notes", []):
            lines.append(f"  note: {note}")
    c = res.get("closure")
    if c:
        lines.append(f"  closure: ({', '.join(c['closure'])})  E {c['E']}  fte {c['fte']}  "
                     f"kernel dims {c['kernel_dims']}  certificate {c['certificate'] or 'none'}")
    b = res.get("bounds")
    if b:
        lines.append(f"  bounds (e = {b['e']}, Q = {b['Q']}, provenance {b['provenance']}):")
        for entry in b["bounds"]:
            lines.append("    " + _bound_row(entry))
    for ch in res.get("chain", []):
        lines.append(f"  proof chain l={ch['l']} (Q = {ch['Q']}): {'ok' if ch['ok'] else 'FAILED'}")
        for st in ch["steps"]:
            mark = "holds" if st["holds"] else ("FAILS" if st["predicted"] else "fails (not predicted)")
            lines.append(f"    {st['step']}: {st['lhs']} {st['relation']} {st['rhs']}  {mark}")
    s = res.get("sample")
    if s:
        lines.append(f"  sampled fte lower bound: {s['max_fte']} (witness {', '.join(s['witness'])}, "
                     f"{len(s['per_trial'])} trials)")
    for key, chk in res.get("expected_check", {}).items():
        lines.append(f"  expect {key}: {chk['expected']} got {chk['got']} [{chk['provenance']}] "
                     f"{'ok' if chk['match'] else 'MISMATCH'}")


def render_text(report: Report) -> str:
    tf = report.taskfile
    rels = ", ".join(tf.relations) if tf.relations else "0"
    lines = [f"frobmult {report.version}  seed {report.seed}",
             f"ring: F_{tf.p}[{', '.join(tf.variables)}]/({rels})"]
    for entry in report.results:
        status = "ok" if entry["ok"] else "FAILED"
        head = f"[{entry['index']}] {entry['task']}: {status}"
        if "seconds" in entry:
            head += f"  ({entry['seconds']} s)"
        lines.append(head)
        if "result" in entry:
            _render_result(entry["result"], lines)
        if "error" in entry:
            lines.append(f"  error: {entry['error']['type']}: {entry['error']['message']}")
    lines.append(f"exit code {report.exit_code}")
    return "\n".join(lines) + "\n"


def render_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobmult", description=__doc__)
    ap.add_argument("--input", "-i", default="-", help="task file (default: stdin)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--e-max", type=int, default=DEFAULT_E_MAX)
    ap.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timing", action="store_true", help="add wall-clock seconds per task")
    ap.add_argument("--version", action="version", version=f"frobmult {__version__}")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        tf = parse_taskfile(text)
    except (OSError, FrobMultError) as exc:
        print(f"frobmult: {exc}", file=sys.stderr)
        return 2
    opts = Options(args.seed, args.e_max, args.degree_cap, args.timing)
    report = run(tf, opts, args.jobs)
    sys.stdout.write(render_report(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
