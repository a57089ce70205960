"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Machine-readable output goes to stdout (or ``--out``); ASCII charts go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import algorithms, gates, synth
from .angles import parse_angle
from .pulse import PulseProgramError, parse_program, serialize_program
from .qstate import StateVector, populations


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Deterministic JSON; floats printed with 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError("non-finite float in JSON output")
        text = format(x, ".17g")
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def ascii_chart(values, labels=None, width: int = 40) -> str:
    """Horizontal bars scaled to the largest magnitude."""
    values = np.asarray(values, dtype=float)
    top = np.max(np.abs(values)) if values.size else 0.0
    n = int(math.log2(values.size)) if values.size else 0
    rows = []
    for i, v in enumerate(values):
        label = labels[i] if labels else format(i, f"0{n}b")
        bar = "#" * int(round(width * abs(v) / top)) if top > 0 else ""
        sign = "-" if v < 0 else " "
        rows.append(f"|{label}> {v: .6f} {sign}{bar}")
    return "\n".join(rows)


def _emit(text: str, out: str | None):
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _chart_trace(trace):
    for label, state in trace.states.items():
        print(f"[{label}]", file=sys.stderr)
        print(ascii_chart(populations(state)), file=sys.stderr)


def _trace_output(trace, args, summary: list[str]):
    payload = dumps(trace.to_dict()) + "\n"
    if args.out:
        _emit(payload, args.out)
    if args.json:
        sys.stdout.write(payload)
    else:
        sys.stdout.write("\n".join(summary) + "\n")
    if args.chart:
        _chart_trace(trace)


def _parse_order(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --order {text!r}") from None


def cmd_synth(args) -> int:
    try:
        phi = parse_angle(args.angle)
        pattern = gates.normalize_condition(args.pattern)
        res = synth.synth_phase_gate(pattern, phi, _parse_order(args.order), expanded=args.expand)
    except synth.SynthesisError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    seq = synth.expand_composite(res.sequence) if args.composite else res.sequence
    _emit(serialize_program(seq), args.out)
    if args.verify:
        report = synth.verify_sequence(
            seq, gates.conditional_phase(pattern, phi), res.expected_phase, tol=args.tol,
            name=f"Cphase({pattern},{args.angle})",
        )
        print(dumps(report.to_dict()), file=sys.stderr if not args.out else sys.stdout)
        return 0 if report.passed else 1
    return 0


def cmd_grover(args) -> int:
    try:
        prog = algorithms.grover_program(args.n, args.target, args.iters)
    except algorithms.ProgramError as exc:
        raise UsageError(str(exc)) from None
    initial = StateVector.basis("0" * args.n)
    if args.density:
        initial = initial.to_density()
    trace = algorithms.run(prog, initial, level=args.level)
    pops = populations(trace.final)
    best = int(np.argmax(pops))
    summary = [f"found |{best:0{args.n}b}> with probability {pops[best]:.5f}"]
    _trace_output(trace, args, summary)
    return 0


def cmd_qft(args) -> int:
    try:
        initial = algorithms.qft_input(args.input_period, args.n)
        prog = algorithms.qft_program(args.n)
    except algorithms.ProgramError as exc:
        raise UsageError(str(exc)) from None
    if args.density:
        initial = initial.to_density()
    trace = algorithms.run(prog, initial, level=args.level)
    pops = populations(trace.final)
    peaks = [i for i, p in enumerate(pops) if p > 1e-9]
    summary = [
        f"input period {args.input_period}, output peaks at {peaks}",
        "populations " + " ".join(f"{p:.6f}" for p in pops),
    ]
    _trace_output(trace, args, summary)
    return 0


def cmd_ppure(args) -> int:
    rho, trace = algorithms.pseudo_pure_2q()
    summary = ["populations " + " ".join(f"{p:.6f}" for p in rho.populations())]
    _trace_output(trace, args, summary)
    return 0


_TARGET = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


def parse_target(text: str, n: int) -> tuple[np.ndarray, str]:
    """Resolve ``Cphase(p,a)``, ``H(q,..)``, ``QFT(n)``, ``SWAP(i,j)`` or ``Rk(k)``.

    Returns the matrix and the comparison mode (``global`` or ``diagonal``).
    """
    m = _TARGET.match(text)
    if not m:
        raise UsageError(f"cannot parse target {text!r}")
    name, argstr = m.group(1).lower(), m.group(2)
    parts = [a.strip() for a in argstr.split(",") if a.strip()]
    try:
        if name == "cphase":
            pattern, angle = parts
            return gates.conditional_phase(pattern, parse_angle(angle)), "global"
        if name == "h":
            return gates.hadamard(n, [int(q) for q in parts] or None), "global"
        if name == "qft":
            return gates.qft_matrix(int(parts[0])), "global"
        if name == "swap":
            i, j = (int(q) for q in parts)
            return gates.swap(i, j, n), "diagonal"
        if name == "rk":
            return gates.r_k(int(parts[0])), "global"
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad target {text!r}: {exc}") from None
    raise UsageError(f"unknown gate {name!r}")


def cmd_verify(args) -> int:
    try:
        with open(args.program) as fh:
            seq = parse_program(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except PulseProgramError as exc:
        raise UsageError(f"{args.program}: {exc}") from None
    if not seq:
        raise UsageError("empty pulse program")
    target, mode = parse_target(args.target, seq[0].n_qubits)
    if args.up_to != "auto":
        mode = args.up_to
    expected = parse_angle(args.phase) if args.phase is not None else None
    try:
        report = synth.verify_sequence(seq, target, expected, tol=args.tol, up_to=mode, name=args.target)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(dumps(report.to_dict()))
    return 0 if report.passed else 1


def cmd_run(args) -> int:
    try:
        with open(args.program) as fh:
            prog = algorithms.parse_program_text(fh.read(), args.n)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except algorithms.ProgramError as exc:
        raise UsageError(f"{args.program}: {exc}") from None
    bits = args.initial or "0" * prog.n_qubits
    try:
        initial = StateVector.basis(bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.density:
        initial = initial.to_density()
    try:
        trace = algorithms.run(prog, initial, level=args.level, final_label="final")
    except (ValueError, algorithms.ProgramError) as exc:
        raise UsageError(str(exc)) from None
    pops = populations(trace.final)
    summary = ["final populations " + " ".join(f"{p:.6f}" for p in pops)]
    _trace_output(trace, args, summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE")
    common.add_argument("--json", action="store_true", help="print JSON to stdout")
    common.add_argument("--chart", action="store_true", help="ASCII population bars on stderr")
    common.add_argument("--level", choices=algorithms.LEVELS, default="gate")
    common.add_argument("--tol", type=float, default=1e-12)

    parser = argparse.ArgumentParser(prog="nmrqip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="compile a conditional phase gate")
    p.add_argument("--pattern", required=True, help="condition over 0, 1, e")
    p.add_argument("--angle", required=True, help="e.g. pi, pi/2, 0.3")
    p.add_argument("--order", help="conditioned-qubit order, e.g. 2,1,3")
    p.add_argument("--expand", action="store_true", help="transition-selective pulses only")
    p.add_argument("--composite", action="store_true", help="realize z pulses with x/y triples")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("grover", parents=[common], help="Grover search")
    p.add_argument("-n", type=int, default=3)
    p.add_argument("--target", required=True)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--density", action="store_true")
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("qft", parents=[common], help="QFT of a periodic input")
    p.add_argument("-n", type=int, default=3)
    p.add_argument("--input-period", type=int, default=4)
    p.add_argument("--density", action="store_true")
    p.set_defaults(func=cmd_qft)

    p = sub.add_parser("ppure", parents=[common], help="2-qubit pseudo-pure preparation")
    p.set_defaults(func=cmd_ppure)

    p = sub.add_parser("verify", parents=[common], help="check a pulse program against a gate")
    p.add_argument("program")
    p.add_argument("--target", required=True, help="e.g. 'Cphase(111,pi)'")
    p.add_argument("--phase", help="expected global phase")
    p.add_argument("--up-to", choices=("auto", "global", "diagonal"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", parents=[common], help="run a gate program file")
    p.add_argument("program")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--initial", help="basis state bitstring")
    p.add_argument("--density", action="store_true")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
