"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 a numeric precondition failed
(unnormalized register, exhausted precision, insufficient resolution).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import TestFunction, kozyrev_wavelet, vladimirov
from .cwt import CwtGrid, admissibility_constant, cwt_forward, cwt_inverse, plancherel_energy
from .exceptions import (
    NormalizationError,
    PadicWaveError,
    PrecisionError,
    ResolutionError,
)
from .haar import (
    Pyramid,
    haar_forward_padic,
    haar_forward_real,
    haar_inverse_padic,
    haar_inverse_real,
    read_signal_csv,
)
from .hierarchic import HierarchicState, norm2, normalize
from .padic import format_padic, format_rational, frac_part, from_rational, norm, parse_rational
from .qudit import (
    ModPFunction,
    apply_gate,
    basis_register,
    hadamard_fourier,
    hadamard_paper,
    measure,
    qft,
    uf_gate,
)
from .simplex import cell_measure, simplex_svg, uses_triangle

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_expand(args) -> int:
    x = from_rational(parse_rational(args.rational), args.p, args.precision)
    lines = [format_padic(x)]
    if x.is_zero:
        lines.append("valuation: inf")
    else:
        lines.append(f"valuation: {x.valuation}")
    lines.append(f"norm: {format_rational(norm(x))}")
    lines.append(f"fractional part: {format_rational(frac_part(x))}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_haar(args) -> int:
    signal = read_signal_csv(_read(args.input), args.mode, args.p, args.precision)
    depth = args.depth
    if depth is None:
        depth = max(len(signal).bit_length() - 1, 0)
    if args.mode == "real":
        pyr = haar_forward_real(signal, depth)
    else:
        pyr = haar_forward_padic(signal, depth)
    _write(args.out, pyr.to_json() + "\n")
    return EXIT_OK


def cmd_haar_inv(args) -> int:
    pyr = Pyramid.from_json(_read(args.input))
    if pyr.mode == "real":
        rows = [repr(float(v)) for v in haar_inverse_real(pyr)]
    else:
        rows = [format_padic(v) for v in haar_inverse_padic(pyr, args.min_precision)]
    _write(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_kozyrev(args) -> int:
    if not args.alpha > 0:
        raise PadicWaveError(f"alpha must be positive, got {args.alpha}")
    psi = kozyrev_wavelet(args.p, args.support, args.resolution)
    d = vladimirov(psi, args.alpha)
    err = np.max(np.abs(d.values - args.p**args.alpha * psi.values)) / psi.max_abs()
    _write(args.out, json.dumps({
        "p": args.p, "alpha": args.alpha, "K": args.support, "J": args.resolution,
        "eigenvalue": args.p**args.alpha, "max_rel_error": float(err),
    }) + "\n")
    return EXIT_OK


def cmd_cwt(args) -> int:
    f = TestFunction.from_json(_read(args.input))
    grid = cwt_forward(f, args.jmin, args.jmax)
    energy = float(np.vdot(f.values, f.values).real) * float(f.cell_measure)
    ratio = plancherel_energy(grid) / admissibility_constant(f.p) / energy if energy else 0.0
    print(f"plancherel ratio: {ratio:.12f}", file=sys.stderr)
    _write(args.out, grid.to_json() + "\n")
    return EXIT_OK


def cmd_icwt(args) -> int:
    grid = CwtGrid.from_json(_read(args.input))
    rec = cwt_inverse(grid)
    if args.reference:
        ref = TestFunction.from_json(Path(args.reference).read_text())
        ref = ref.refine(rec.support, rec.resolution)
        scale = ref.l2_norm() or 1.0
        print(f"relative L2 error: {(rec - ref).l2_norm() / scale:.3e}", file=sys.stderr)
    _write(args.out, rec.to_json() + "\n")
    return EXIT_OK


def cmd_hier_demo(args) -> int:
    state = normalize(HierarchicState.random(args.p, args.depth, args.dim, args.seed), args.weighting)
    lines = [f"p={args.p} depth={args.depth} M={args.dim} weighting={args.weighting}"]
    for level, value in enumerate(state.level_norms(args.weighting)):
        lines.append(f"level {level}: {state.p**level} nodes, norm^2 {value:.12f}")
    lines.append(f"total norm^2: {norm2(state, args.weighting):.12f}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_circuit(text: str):
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op = parts[0].upper()
        try:
            if op == "H" and len(parts) in (2, 3):
                variant = parts[2].lower() if len(parts) == 3 else "fourier"
                if variant not in ("paper", "fourier"):
                    raise ValueError(variant)
                ops.append(("H", int(parts[1]), variant))
            elif op == "UF" and len(parts) == 4:
                table = tuple(int(v) for v in parts[3].split(","))
                ops.append(("UF", int(parts[1]), int(parts[2]), table))
            elif op == "QFT" and len(parts) == 1:
                ops.append(("QFT",))
            elif op == "MEASURE" and len(parts) in (2, 3):
                seed = int(parts[2]) if len(parts) == 3 else None
                ops.append(("MEASURE", int(parts[1]), seed))
            else:
                raise ValueError(line)
        except ValueError:
            raise PadicWaveError(f"circuit line {lineno}: cannot parse {raw.strip()!r}") from None
    return ops


def cmd_qudit(args) -> int:
    ops = _parse_circuit(Path(args.circuit).read_text())
    init = [int(d) for d in args.init.split(",")] if args.init else [0] * args.n
    if len(init) != args.n:
        raise PadicWaveError(f"--init has {len(init)} digits, expected {args.n}")
    reg = basis_register(args.p, init)
    result = None
    for op in ops:
        if op[0] == "H":
            gate = hadamard_paper(args.p) if op[2] == "paper" else hadamard_fourier(args.p)
            reg = apply_gate(reg, gate, op[1])
            if reg.norm_defect > 1e-10:
                norm_sq = float(np.vdot(reg.amplitudes, reg.amplitudes).real)
                print(f"warning: non-unitary Hadamard left norm^2 = {norm_sq:.12g}", file=sys.stderr)
                if args.renormalize:
                    reg = reg.normalized()
        elif op[0] == "UF":
            reg = apply_gate(reg, uf_gate(ModPFunction(args.p, op[3])), [op[1], op[2]])
        elif op[0] == "QFT":
            reg = qft(reg)
        else:
            seed = args.seed if op[2] is None else op[2]
            counts = measure(reg, op[1], seed)
            result = {
                "p": args.p, "n": args.n, "shots": op[1], "seed": seed,
                "counts": {",".join(map(str, reg.digits(i))): c for i, c in sorted(counts.items())},
            }
    if args.dump:
        Path(args.dump).write_text(reg.to_json() + "\n")
    if result is None:
        _write(args.out, reg.to_json() + "\n")
    else:
        _write(args.out, json.dumps(result, indent=1) + "\n")
    return EXIT_OK


def cmd_simplex(args) -> int:
    highlight = None
    if args.highlight:
        highlight = [int(d) for d in args.highlight.split(",")]
    # p = 2 is the binary interval picture; only other p get the notice
    if not uses_triangle(args.p) and args.p != 2:
        print(f"notice: p={args.p} has no simplex drawing; rendering the interval partition",
              file=sys.stderr)
    svg = simplex_svg(args.p, args.depth, highlight)
    if highlight is not None:
        print(f"highlighted cell measure: {format_rational(cell_measure(args.p, len(highlight)))}",
              file=sys.stderr)
    _write(args.out, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicwave",
        description="p-adic arithmetic, wavelets, hierarchic states and qudits",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="output path (default: stdout)")
        return sp

    sp = add("expand", cmd_expand, "print the p-adic expansion and norm of a rational")
    sp.add_argument("rational", help="e.g. 12, -1, 7/75")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--precision", type=int, default=20)

    sp = add("haar", cmd_haar, "Haar pyramid of a one-sample-per-line CSV signal")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--mode", choices=("real", "padic"), default="real")
    sp.add_argument("--depth", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--precision", type=int, default=20)

    sp = add("haar-inv", cmd_haar_inv, "reconstruct a signal from pyramid JSON")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--min-precision", type=int, default=1)

    sp = add("kozyrev", cmd_kozyrev, "check the Vladimirov eigenrelation of the Kozyrev wavelet")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--support", "-K", type=int, default=0)
    sp.add_argument("--resolution", "-J", type=int, default=1)

    sp = add("cwt", cmd_cwt, "forward p-adic CWT of a test-function JSON")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--jmin", type=int, default=-4)
    sp.add_argument("--jmax", type=int, default=4)

    sp = add("icwt", cmd_icwt, "reconstruct a test function from CWT grid JSON")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--reference", help="original function JSON for an error report")

    sp = add("hier-demo", cmd_hier_demo, "random normalized hierarchic state, level by level")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--dim", type=int, default=1)
    sp.add_argument("--weighting", choices=("flat", "measure"), default="flat")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("qudit", cmd_qudit, "run a qudit circuit file")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--init", help="comma-separated basis digits (default all 0)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dump", help="also write the final register JSON here")
    sp.add_argument("--renormalize", action="store_true",
                    help="renormalize after a non-unitary Hadamard")

    sp = add("simplex", cmd_simplex, "SVG of the p-fold self-similar partition")
    sp.add_argument("--p", type=int, default=4)
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--highlight", help="comma-separated cell address")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NormalizationError, PrecisionError, ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PadicWaveError, ZeroDivisionError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
