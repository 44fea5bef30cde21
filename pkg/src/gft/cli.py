"""Command-line front end.  Every command prints a report in text or JSON.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, bounds, oracle, radii, regions
from .classes import (CaratheodoryDomainError, ClassParameterError, SchwarzSpec,
                      generate_function, get_class, inverse_from_direct,
                      load_descriptor)
from .series import SeriesError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SIG = 12

RADIUS_DEFAULT_PARAM = {("D", "a"): 0.0, ("D", "c"): 0.5, ("D", "d"): 1.5, ("E", "e"): 0.5}
BISECTION_TOL = 1e-8

log = logging.getLogger("gft")


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# number formatting


def num(x):
    """Round to 12 significant digits; complex values with zero imaginary part become real."""
    if isinstance(x, (bool, np.bool_)) or x is None:
        return x if x is None else bool(x)
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0:
            return num(x.real)
        return [num(x.real), num(x.imag)]
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return x
        return float(f"{x:.{SIG}g}") + 0.0  # no negative zero
    return x


def clean(obj):
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [clean(v) for v in obj]
    return num(obj)


def fmt(x) -> str:
    x = num(x)
    if isinstance(x, float):
        return f"{x:.{SIG}g}"
    if isinstance(x, list):
        return "[" + ", ".join(fmt(v) for v in x) + "]"
    return str(x)


# --------------------------------------------------------------------------
# argument helpers


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cannot parse number list {text!r}") from None


def resolve_class(spec: str):
    """Built-in id, ``id:key=value,...`` or a JSON descriptor path."""
    if spec.endswith(".json") or (os.sep in spec and Path(spec).exists()):
        if not Path(spec).exists():
            raise InputError(f"descriptor file {spec!r} not found")
        try:
            return load_descriptor(spec)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad descriptor {spec!r}: {exc}") from None
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise InputError(f"class parameter {item!r} is not key=value")
        params[key.strip()] = float(value)
    try:
        return get_class(name, **params)
    except KeyError as exc:
        raise InputError(str(exc).strip("'\"")) from None


def default_seed() -> int:
    env = os.environ.get("GFT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"GFT_SEED must be an integer, got {env!r}") from None


# --------------------------------------------------------------------------
# report


class Report:
    def __init__(self, command: str, config: dict, seed=None):
        self.command = command
        self.config = config
        self.seed = seed
        self.results: list[dict] = []
        self.verdicts: list[dict] = []

    def as_dict(self) -> dict:
        return clean({"command": self.command, "config": self.config, "results": self.results,
                      "verdicts": self.verdicts, "seed": self.seed, "version": __version__})

    def failed(self) -> bool:
        return any(v.get("verdict") in ("VIOLATION", "MISMATCH", "FAIL") for v in self.verdicts)

    def text(self) -> str:
        d = self.as_dict()
        lines = [f"# {d['command']}  (gft {d['version']}, seed {d['seed']})"]
        for r in d["results"]:
            lines.append("  ".join(f"{k}={fmt(v)}" for k, v in r.items() if not isinstance(v, dict)))
        for v in d["verdicts"]:
            lines.append(f"{v.get('verdict', '?'):16s} {v.get('target', '')}  "
                         + "  ".join(f"{k}={fmt(x)}" for k, x in v.items()
                                     if k not in ("verdict", "target") and not isinstance(x, dict)))
        return "\n".join(lines)


def config_of(args) -> dict:
    skip = {"func", "json"}
    return {k: v for k, v in vars(args).items() if k not in skip}


# --------------------------------------------------------------------------
# commands


def cmd_coeffs(args) -> Report:
    cls = resolve_class(args.cls)
    try:
        w = SchwarzSpec(parse_complex(args.eps), args.m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.N < 5:
        raise InputError("N must be at least 5 to report a_2..a_5")
    f = generate_function(cls, w, args.N)
    a = [complex(f[n]) for n in range(2, 6)]
    A = inverse_from_direct(*a)
    rep = Report("coeffs", config_of(args))
    rep.results.append({"class": cls.name, **{f"a{n}": v for n, v in zip(range(2, 6), a)},
                        **{f"A{n}": v for n, v in zip(range(2, 6), A)}})
    rep.results.append({"series": [complex(c) for c in f.coeffs]})
    return rep


def _B_or_class(args, need: int):
    if args.B is not None:
        B = parse_floats(args.B)
        if len(B) < need:
            raise InputError(f"--B needs at least {need} values")
        return B, "custom"
    if args.cls is None:
        raise InputError("give --class or --B")
    cls = resolve_class(args.cls)
    return list(cls.B), cls.name


def cmd_bound(args) -> Report:
    rep = Report(f"bound {args.kind}", config_of(args))
    mu = parse_complex(args.mu)
    if args.kind == "fs-inverse":
        B, name = _B_or_class(args, 2)
        reports = [bounds.fs_inverse_bound(B[0], B[1], mu)]
    elif args.kind == "hankel2-inverse":
        B, name = _B_or_class(args, 3)
        reports = [bounds.hankel2_inverse_bound(*B[:3])]
    elif args.kind == "class-inverse":
        if args.cls is None:
            raise InputError("class-inverse needs --class se or --class sr")
        try:
            reports = bounds.class_inverse_bounds(args.cls)
        except NotImplementedError as exc:
            raise InputError(str(exc)) from None
        name = args.cls
    elif args.kind == "sr-direct":
        reports, name = bounds.sr_direct_bounds(mu), "sr"
    else:
        an, h3 = bounds.sr_conjectures(args.nmax)
        reports, name = an + [h3], "sr"
    for r in reports:
        d = r.to_dict()
        d.pop("inputs")
        rep.results.append({"class": name, **d})
    return rep


def _radius_param(theorem, branch, args):
    p = args.beta if (theorem, branch) == ("D", "d") else args.alpha
    if p is None:
        p = RADIUS_DEFAULT_PARAM.get((theorem, branch))
    return p


def radius_verdict(theorem: str, branch: str, param, delta: float = 1e-4) -> dict:
    """Closed form vs bisection, then the sharpness probe with the named witness."""
    res = radii.radius(theorem, branch, param)
    out = {"target": f"radius:{theorem}:{branch}", "param": param, "R": res.value,
           "witness": res.sharp_witness}
    bis = radii.radius_by_bisection(theorem, branch, param)
    out["bisection"] = bis.value
    agree = abs(bis.value - res.value) < BISECTION_TOL
    out["bisection_agrees"] = agree
    wid, zfp, region = radii.witness(theorem, branch, param)
    if res.value * (1 + delta) >= 1:
        # nothing outside the unit disk to probe; check the inside only
        inner = regions.membership(region, zfp(res.value * (1 - delta)
                                               * np.exp(1j * np.linspace(0, 2 * np.pi, 2048))))
        ok = bool(inner.inside.all())
        out.update(inner_inside=ok, outer_escapes=None, note="R = 1, outer probe not applicable")
        out["verdict"] = "SOUND" if ok else "VIOLATION"
    else:
        sc = radii.sharpness_check(zfp, region, res.value, delta)
        out.update(inner_inside=sc.inner_inside, outer_escapes=sc.outer_escapes)
        if sc.violating_sample is not None:
            out["violating_sample"] = sc.violating_sample
        out["verdict"] = sc.verdict
    if not agree and out["verdict"] != "VIOLATION":
        out["verdict"] = "MISMATCH"
    return out


def cmd_radius(args) -> Report:
    theorem, branch = args.thm.upper(), args.branch.lower()
    param = _radius_param(theorem, branch, args)
    rep = Report("radius", config_of(args))
    res = radii.radius(theorem, branch, param)
    rep.results.append(res.to_dict())
    if args.verify:
        rep.verdicts.append(radius_verdict(theorem, branch, param))
    return rep


def _bound_targets(func: str | None, cid: str | None):
    entries = oracle.acceptance_matrix()
    if func is None:
        return entries
    f = oracle.Functional.parse(func)
    hit = [e for e in entries if e.functional == f and e.class_id == cid]
    if hit:
        return hit
    # not in the matrix: use the generic bound for the class when one exists
    cls = resolve_class(cid)
    B = cls.B
    if f.kind == "fs_inverse":
        b = bounds.fs_inverse_bound(B[0], B[1], f.mu)
    elif f.kind == "hankel2_inverse":
        b = bounds.hankel2_inverse_bound(*B[:3])
    elif f.kind == "absA2":
        b = bounds.a2_inverse_bound(B[0])
    elif f.kind == "absA3":
        b = bounds.a3_inverse_bound(B[0], B[1])
    else:
        raise InputError(f"no bound on record for {f.label} over {cid}")
    return [oracle.MatrixEntry(f, cid, b)]


def _radius_targets(theorem: str | None, branch: str | None, param):
    if theorem is None:
        return [(t, b, RADIUS_DEFAULT_PARAM.get((t, b))) for t in "DE" for b in "abcde"]
    t, b = theorem.upper(), branch.lower()
    return [(t, b, param if param is not None else RADIUS_DEFAULT_PARAM.get((t, b)))]


def cmd_verify(args) -> Report:
    seed = args.seed if args.seed is not None else default_seed()
    budget = oracle.SearchBudget(args.starts, args.iterations, seed)
    rep = Report("verify", config_of(args), seed)
    parts = args.target.split(":")
    kind = parts[0]
    bound_entries, radius_items = [], []
    if kind == "all":
        bound_entries = _bound_targets(None, None)
        radius_items = _radius_targets(None, None, None)
    elif kind == "bound" and len(parts) == 3:
        bound_entries = _bound_targets(parts[1], parts[2])
    elif kind == "radius" and len(parts) in (3, 4):
        p = float(parts[3]) if len(parts) == 4 else None
        radius_items = _radius_targets(parts[1], parts[2], p)
    else:
        raise InputError("target must be all, bound:FUNCTIONAL:CLASS or radius:THEOREM:BRANCH[:PARAM]")
    for e in bound_entries:
        v = oracle.verify_bound(e.functional, e.cls, e.bound, budget, args.sharp_tol, args.workers)
        d = v.to_dict()
        d["target"] = e.target
        d["witness_value"] = oracle.witness_value(e)
        rep.verdicts.append(d)
    for t, b, p in radius_items:
        rep.verdicts.append(radius_verdict(t, b, p))
    return rep


def cmd_region(args) -> Report:
    cls = resolve_class(args.cls)
    w = parse_complex(args.w)
    region = regions.class_region(cls)
    m = regions.membership(region, w, args.samples)
    rep = Report("region contains", config_of(args))
    rep.results.append({
        "class": cls.name, "w": w, "inside": bool(m.inside[0]), "ambiguous": bool(m.ambiguous[0]),
        "winding": None if m.winding is None else int(m.winding[0]),
        "method": "predicate" if region.boundary is None else "winding",
    })
    return rep


def cmd_plot_data(args):
    cls = resolve_class(args.cls)
    t = np.linspace(0.0, 2 * np.pi, args.samples, endpoint=False)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = cls.boundary(t)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        wr = csv.writer(out)
        wr.writerow(["t", "Re", "Im"])
        for ti, wi in zip(t, w):
            wr.writerow([fmt(ti), fmt(wi.real), fmt(wi.imag)])
    finally:
        if args.out:
            out.close()
    return None


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the report as JSON")
    p = argparse.ArgumentParser(prog="gft", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="a_2..a_5 and A_2..A_5 of phi(eps z^m)")
    c.add_argument("--class", dest="cls", required=True)
    c.add_argument("--eps", default="1")
    c.add_argument("--m", type=int, default=1)
    c.add_argument("--N", type=int, default=8)
    c.set_defaults(func=cmd_coeffs)

    b = sub.add_parser("bound", parents=[common], help="closed-form bounds")
    b.add_argument("kind", choices=["fs-inverse", "hankel2-inverse", "class-inverse", "sr-direct",
                                    "sr-conjectures"])
    b.add_argument("--class", dest="cls")
    b.add_argument("--B", help="comma-separated B1,B2[,B3[,B4]]")
    b.add_argument("--mu", default="0")
    b.add_argument("--nmax", type=int, default=8)
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("radius", parents=[common], help="radius constants")
    r.add_argument("--thm", required=True, choices=["D", "E", "d", "e"])
    r.add_argument("--branch", required=True, choices=list("abcdeABCDE"))
    r.add_argument("--alpha", type=float)
    r.add_argument("--beta", type=float)
    r.add_argument("--verify", action="store_true", help="also run bisection and the sharpness probe")
    r.set_defaults(func=cmd_radius)

    v = sub.add_parser("verify", parents=[common], help="numerical verification")
    v.add_argument("--target", default="all")
    v.add_argument("--seed", type=int)
    v.add_argument("--starts", type=int, default=64)
    v.add_argument("--iterations", type=int, default=2000)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--sharp-tol", type=float, default=oracle.SHARP_TOL)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("region", parents=[common], help="membership in phi(D)")
    gsub = g.add_subparsers(dest="action", required=True)
    gc = gsub.add_parser("contains", parents=[common])
    gc.add_argument("--class", dest="cls", required=True)
    gc.add_argument("--w", required=True)
    gc.add_argument("--samples", type=int, default=regions.DEFAULT_SAMPLES)
    gc.set_defaults(func=cmd_region)

    d = sub.add_parser("plot-data", parents=[common], help="boundary curve as CSV (t, Re, Im)")
    d.add_argument("--class", dest="cls", required=True)
    d.add_argument("--samples", type=int, default=512)
    d.add_argument("--out")
    d.set_defaults(func=cmd_plot_data)
    return p


INPUT_ERRORS = (InputError, ClassParameterError, CaratheodoryDomainError, SeriesError,
                bounds.BoundDomainError, radii.RadiusDomainError, regions.BoundaryAmbiguousError,
                ValueError, KeyError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors (2) and --help (0)
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    args.json = getattr(args, "json", False)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        rep = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"gft: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if rep is None:
        return EXIT_OK
    print(json.dumps(rep.as_dict(), indent=2) if args.json else rep.text())
    return EXIT_FAIL if rep.failed() else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
