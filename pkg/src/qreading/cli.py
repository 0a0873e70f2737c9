"""Command-line driver: ``qreading {read,sweep,gram,entropy,qfi}``.

Exit status is 0 on success, 1 on a domain error, 2 when the analytic and
Fock backends disagree.
"""

from __future__ import annotations

import argparse
import math
import re
import sys

from . import experiments as ex
from .errors import CrossCheckError, DomainError
from .fock import DEFAULT_TAIL_TOL

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*|\.\d+))?\s*$")


def parse_angle(text: str) -> float:
    """Radians, also accepting ``pi``, ``-pi``, ``2pi``, ``pi/2``, ``3*pi/4``."""
    m = _PI_RE.match(text.lower())
    if m:
        num, den = m.groups()
        if num in (None, "", "+"):
            k = 1.0
        elif num == "-":
            k = -1.0
        else:
            k = float(num)
        value = k * math.pi
        return value / float(den) if den else value
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--backend", choices=ex.BACKENDS, default="analytic")
    p.add_argument("--fock-tail-tol", type=float, default=DEFAULT_TAIL_TOL,
                   help="Poisson tail mass allowed beyond the Fock cutoff (default 1e-14)")
    p.add_argument("--cross-tol", type=float, default=ex.DEFAULT_CROSS_TOL,
                   help="analytic/Fock agreement required with --backend both")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreading",
        description="Quantum reading of a phase-encoded memory with coherent and "
        "quasi-Bell entangled coherent probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("read", help="error probabilities of the three receivers")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--theta", type=parse_angle, default=math.pi)
    p.add_argument("--prior0", type=float, default=0.5)
    _add_common(p)

    p = sub.add_parser("sweep", help="one quantity along a parameter grid")
    p.add_argument("--variable", choices=ex.VARIABLES, default="alpha")
    p.add_argument("--quantity", choices=ex.QUANTITIES, default="reading")
    p.add_argument("--start", type=parse_angle, default=None)
    p.add_argument("--stop", type=parse_angle, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--theta", type=parse_angle, default=None)
    p.add_argument("--prior0", type=float, default=None)
    _add_common(p)

    for name, help_ in (
        ("gram", "Gram matrix of the four quasi-Bell states"),
        ("entropy", "entanglement entropy of the four quasi-Bell states"),
        ("qfi", "phase quantum Fisher information of each probe"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--alpha", type=float, nargs="+", default=None,
                       help="one or more amplitudes (default: 30 points over [0.1, 3])")
        p.add_argument("--points", type=int, default=None,
                       help="size of the default alpha grid")
        _add_common(p)
    return parser


_SWEEP_DEFAULTS = {
    "alpha": (0.1, 3.0, 30),
    "theta": (0.0, 2.0 * math.pi, 145),
    "prior0": (0.0, 1.0, 101),
}


def _sweep_spec(args) -> ex.SweepSpec:
    start, stop, points = _SWEEP_DEFAULTS[args.variable]
    fixed = {
        k: getattr(args, k)
        for k in ex.VARIABLES
        if k != args.variable and getattr(args, k) is not None
    }
    return ex.SweepSpec(
        args.variable,
        start if args.start is None else args.start,
        stop if args.stop is None else args.stop,
        points if args.points is None else args.points,
        fixed,
    )


def _alpha_grid(args):
    if args.alpha:
        return args.alpha
    if args.points is not None:
        if args.points < 2:
            raise DomainError("--points must be at least 2")
        return list(ex.SweepSpec("alpha", 0.1, 3.0, args.points).grid())
    return list(ex.DEFAULT_ALPHA_GRID)


def run(args) -> list[ex.ResultRow]:
    kw = dict(backend=args.backend, tail_tol=args.fock_tail_tol, cross_tol=args.cross_tol)
    if args.command == "read":
        return ex.run_reading(args.alpha, args.theta, args.prior0, **kw)
    if args.command == "sweep":
        return ex.run_sweep(_sweep_spec(args), args.quantity, **kw)
    table = {"gram": ex.gram_rows, "entropy": ex.entropy_rows, "qfi": ex.qfi_rows}
    return table[args.command](_alpha_grid(args), **kw)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rows = run(args)
        ex.emit(rows, args.format, args.out)
    except CrossCheckError as exc:
        print(f"qreading: cross-check failed: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"qreading: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
