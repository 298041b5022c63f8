"""``photondof`` command line: state, fringe, visibility, analyze, k.

Exit status is 0 on success, 2 on usage or input-file errors, 1 when a
computation fails.
"""

import argparse
import json
import sys
from pathlib import Path

from .errors import GridError, ParseError, PhotonDofError
from .fock import normalize, to_first_quantized
from .fringe import DEFAULT_POINTS, check_grid, fringe_sweep, uniform_grid, visibility_prediction
from .optics import build_ghz_projection_network, build_noon_projection_network, load_network
from .states import (
    SPATIAL,
    build_state,
    compute_K,
    format_profile,
    load_profile,
    make_profile,
)
from .statefile import format_state, load_state
from .symmetry import DofPartition, factorization_report

STATE_KINDS = ("noon", "ghz", "pdc2", "pdc4", "file")
PROFILE_KINDS = ("point", "uniform", "gaussian")


class UsageError(Exception):
    pass


def _profile(args):
    text = args.profile or "point"
    if text.split(":", 1)[0].lower() in PROFILE_KINDS:
        return make_profile(text)
    return load_profile(text, normalize=args.normalize)


def _state(args):
    kind = args.state
    if kind == "file":
        if not args.input:
            raise UsageError("--state file needs --input PATH")
        s = load_state(args.input)
        return (normalize(s)[0] if args.normalize else s), None
    if kind in ("noon", "ghz") and args.n is None:
        raise UsageError(f"--state {kind} needs --n")
    profile = _profile(args) if kind in ("pdc2", "pdc4") else None
    return build_state(kind, n=args.n, profile=profile), profile


def _network(args, s):
    if getattr(args, "network", None):
        return load_network(args.network)
    n = s.photon_number
    arms = s.schema.alphabet(SPATIAL)
    if args.state == "ghz" or (args.state == "file" and len(arms) == n and n > 1):
        return build_ghz_projection_network(n, arms=arms)
    return build_noon_projection_network(n, input_arm=arms[0])


def _resolve(fn, *a):
    try:
        return fn(*a)
    except UsageError:
        raise
    except (ParseError, OSError, ValueError, PhotonDofError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _g12(x):
    return float(f"{float(x):.12g}") + 0.0


def _json(doc):
    return json.dumps(doc, indent=2) + "\n"


def cmd_state(args):
    s, _ = _resolve(_state, args)
    if args.format == "json":
        doc = {
            "photon_number": s.photon_number,
            "schema": [{"name": n, "labels": list(a)} for n, a in s.schema.dofs],
            "kets": [
                {
                    "modes": [[list(s.schema.labels(m)), c] for m, c in ket],
                    "amplitude": [_g12(a.real), _g12(a.imag)],
                }
                for ket, a in s.items()
            ],
        }
        _emit(_json(doc), args.out)
    else:
        _emit(format_state(s), args.out)


def _sweep(args, s):
    net, layout = _resolve(_network, args, s)
    try:
        check_grid(uniform_grid(args.points), s.photon_number)
    except GridError as exc:
        raise UsageError(f"--points: {exc}") from None
    return fringe_sweep(s, net, layout, grid=uniform_grid(args.points), workers=args.workers)


def cmd_fringe(args):
    s, _ = _resolve(_state, args)
    result = _sweep(args, s)
    if args.format == "json":
        _emit(_json(result.to_dict()), args.out)
    else:
        _emit(result.to_csv(), args.out)


def cmd_visibility(args):
    s, profile = _resolve(_state, args)
    result = _sweep(args, s)
    doc = {}
    if profile is not None:
        doc["K"] = _g12(compute_K(profile))
    doc["V_simulated"] = _g12(result.visibility)
    if args.state == "pdc4":
        doc["V_predicted"] = _g12(visibility_prediction(compute_K(profile)))
    elif args.state in ("noon", "ghz", "pdc2"):
        doc["V_predicted"] = 1.0
    doc["fundamental"] = result.fundamental
    _emit(_json(doc), args.out)


def cmd_analyze(args):
    s, _ = _resolve(_state, args)
    t = to_first_quantized(s)
    left = [x for x in args.partition.split(",") if x]
    p = _resolve(DofPartition.split, s.schema, left)
    _emit(_json(factorization_report(t, p)), args.out)


def cmd_k(args):
    profile = _resolve(_profile, args)
    k = compute_K(profile)
    doc = {
        "K": _g12(k),
        "V_predicted": _g12(visibility_prediction(k)),
        "labels": list(profile.labels),
        "amplitudes": [_g12(a) for a in profile.amplitudes],
    }
    if args.format == "text":
        _emit(format_profile(profile), args.out)
    else:
        _emit(_json(doc), args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="photondof", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--state", choices=STATE_KINDS, default="noon")
        p.add_argument("--n", type=int, help="photon number for noon/ghz")
        p.add_argument("--profile", help="point | uniform:d | gaussian:d:w | FILE")
        p.add_argument("--input", help="state document for --state file")
        p.add_argument("--normalize", action="store_true", help="rescale non-normalized input files")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("state", help="build a state and print its document")
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_state)

    for name, func, fmts, default in (
        ("fringe", cmd_fringe, ("csv", "json"), "csv"),
        ("visibility", cmd_visibility, ("json",), "json"),
    ):
        p = sub.add_parser(name, help=f"{name} of the NOON-projection coincidence fringe")
        common(p, fmts, default)
        p.add_argument("--points", type=int, default=DEFAULT_POINTS)
        p.add_argument("--network", help="JSON network description (default: built-in projection network)")
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("analyze", help="symmetry and Schmidt factorization report")
    common(p, ("json",), "json")
    p.add_argument("--partition", default="pol", help="comma-separated DOFs on the left side")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("k", help="K parameter of a spectral profile")
    p.add_argument("--profile", default="point")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_k)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"photondof: error: {exc}", file=sys.stderr)
        return 2
    except (PhotonDofError, ValueError, OSError) as exc:
        print(f"photondof: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
