"""Command-line front end.

Subcommands: construct, cheeger, verify, dimension, render.  Every command
emits a schema-versioned JSON report on stdout; timing lives in a separate
sidecar field so that reports are otherwise byte-identical across runs.

Exit codes: 0 success, 2 verification failure, 3 no solution, 4 numeric
failure, 64 usage/input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, gridoracle
from .cantor import StaircaseParams, estimate_dimension
from .constructions import (
    CantorDomainSpec,
    ContactSet,
    KgonSpec,
    PerturbationSpec,
    build_cantor_domain,
    build_kgon_domain,
    build_perturbed_domain,
    contact_set,
    delta_max,
    solve_ell0,
    solve_rho0,
)
from .errors import (
    CheegerForgeError,
    DeltaTooLarge,
    EmptyRegion,
    FallbackRequired,
    InsufficientScales,
    InvalidGeometry,
    InvalidInput,
    InvalidParameter,
    NoSolution,
    NotConnected,
    NumericalFailure,
    ResolutionTooCoarse,
)
from .geometry import ArcGon, load_arcgon, save_arcgon
from .profile import arc_angles, verify_tangent_balls
from .render import write_svg
from .solver import cheeger_constant, steiner_check, verify_self_cheeger

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_NO_SOLUTION = 3
EXIT_NUMERIC = 4
EXIT_USAGE = 64

_USAGE_ERRORS = (
    InvalidParameter,
    InvalidInput,
    InvalidGeometry,
    InsufficientScales,
    DeltaTooLarge,
    ResolutionTooCoarse,
    EmptyRegion,
    NotConnected,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we reserve 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _report(command: str, inputs: dict, outputs: dict, t0: float) -> dict:
    return {
        "schema": "cheeger-forge/1",
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    sys.stdout.write(text)
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# construct


def _cmd_construct(args) -> int:
    t0 = time.perf_counter()
    spec = _load_json(args.spec)
    kind = spec.get("kind")
    if kind not in ("kgon", "cantor"):
        raise InvalidInput(f"spec kind must be 'kgon' or 'cantor', got {kind!r}")
    stem = Path(args.spec)
    out = args.out or str(stem.with_suffix("")) + ".domain.json"
    solved: dict = {}

    if kind == "kgon":
        k = spec.get("k")
        H = spec.get("H", 1.0)
        rho = spec.get("rho")
        if rho is None:
            rho = solve_rho0(int(k), float(H), tol=args.tol)
            solved["rho0"] = rho
        domain = build_kgon_domain(KgonSpec(int(k), float(H), float(rho)))
        contact = None
        pert_kind = "lipschitz"
    else:
        tau = float(spec.get("tau"))
        n = int(spec.get("n"))
        H = float(spec.get("H", 1.0))
        ell = spec.get("ell")
        if ell is None:
            ell = solve_ell0(tau, n, H, tol=args.tol)
            solved["ell0"] = ell
        params = StaircaseParams(H=H, ell=float(ell), tau=tau, n=n)
        domain = build_cantor_domain(CantorDomainSpec(params))
        # contact parameter set of the construction: the kept (stage) arcs
        lengths = [e.length for e in domain.edges]
        prefix = np.concatenate(([0.0], np.cumsum(lengths)))
        ivs = [
            (float(prefix[i]), float(prefix[i + 1]))
            for i, e in enumerate(domain.edges)
            if e.curvature <= 0.0
        ]
        contact = ContactSet((), tuple(ivs))
        pert_kind = "cantor"

    save_arcgon(domain, out)
    outputs = {"domain": out, "edges": len(domain.edges), "area": domain.area(),
               "perimeter": domain.perimeter(), **solved}

    if "delta" in spec:
        delta = spec["delta"]
        if delta is None:
            delta = 0.5 * delta_max(domain)
        ambient, built_contact = build_perturbed_domain(
            domain, PerturbationSpec(float(delta)), pert_kind
        )
        ambient_out = args.ambient_out or str(stem.with_suffix("")) + ".ambient.json"
        save_arcgon(ambient, ambient_out)
        outputs["ambient"] = ambient_out
        outputs["delta"] = float(delta)
        contact = built_contact
    if contact is not None:
        contact_out = args.contact_out or str(stem.with_suffix("")) + ".contact.json"
        with open(contact_out, "w", encoding="utf-8") as fh:
            json.dump(contact.to_dict(), fh, indent=2)
            fh.write("\n")
        outputs["contact"] = contact_out
        outputs["contact_elements"] = contact.count()

    _emit(_report("construct", {"spec": args.spec, "tol": args.tol}, outputs, t0), args.report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# cheeger


def _cmd_cheeger(args) -> int:
    t0 = time.perf_counter()
    domain = load_arcgon(args.domain)
    fallback_note = None
    try:
        sol = cheeger_constant(domain, tol=args.tol, grid_step=args.grid_step)
    except FallbackRequired as exc:
        fallback_note = str(exc)
        sol = cheeger_constant(domain, tol=args.tol, grid_step=args.grid_step, force_grid=True)

    outputs: dict = {"solution": sol.to_dict()}
    if fallback_note:
        outputs["fallback"] = fallback_note
    agree = True
    if sol.method == "exact":
        step = args.grid_step or gridoracle.default_step(domain)
        grid = gridoracle.distance_transform(gridoracle.rasterize(domain, step))
        r_g, h_g = gridoracle.grid_cheeger(grid)
        budget = max(1e-3, 4.0 * step * sol.h * sol.h)
        agree = abs(h_g - sol.h) <= budget
        outputs["grid_check"] = {
            "step": step,
            "r": r_g,
            "h": h_g,
            "budget": budget,
            "agree": agree,
        }
    _emit(
        _report(
            "cheeger",
            {"domain": args.domain, "tol": args.tol, "grid_step": args.grid_step},
            outputs,
            t0,
        ),
        args.report,
    )
    return EXIT_OK if agree else EXIT_VERIFY


# ---------------------------------------------------------------------------
# verify


def _require_staircase_meta(domain: ArcGon, path: str) -> StaircaseParams:
    meta = domain.meta or {}
    if meta.get("kind") != "cantor":
        raise InvalidInput(
            f"{path}: suite needs a staircase-profile domain (built by construct kind=cantor)"
        )
    return StaircaseParams(
        H=float(meta["H"]), ell=float(meta["ell"]), tau=float(meta["tau"]), n=int(meta["n"])
    )


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    suite = args.suite
    inputs = {
        "files": list(args.files),
        "suite": suite,
        "samples": args.samples,
        "tol": args.tol,
    }
    if not args.files:
        raise InvalidInput("verify needs at least one domain file")
    domain = load_arcgon(args.files[0])

    if suite == "self-cheeger":
        rep = verify_self_cheeger(domain, args.samples, tol=args.tol)
        outputs = {"certificate": rep.to_dict()}
        ok = rep.passed
    elif suite == "steiner":
        if args.radius is not None:
            r = args.radius
        else:
            cap = min(
                (-1.0 / e.curvature for e in domain.edges if e.curvature < 0.0),
                default=math.inf,
            )
            r = min(domain.area() / domain.perimeter(), 0.5 * cap)
        a_res, p_res = steiner_check(domain, r)
        ok = a_res <= 1e-8 and p_res <= 1e-8
        outputs = {
            "radius": r,
            "area_residual": a_res,
            "perimeter_residual": p_res,
            "passed": ok,
        }
    elif suite == "tangent-balls":
        params = _require_staircase_meta(domain, args.files[0])
        ts = np.linspace(0.0, params.ell, args.samples + 2)[1:-1]
        certs = verify_tangent_balls(params, ts)
        bad = [c for c in certs if not c.contained]
        outputs = {
            "checked": len(certs),
            "failures": [c.to_dict() for c in bad[:32]],
            "min_clearance": min(c.clearance for c in certs),
            "passed": not bad,
        }
        ok = not bad
    elif suite == "angles":
        params = _require_staircase_meta(domain, args.files[0])
        rep = arc_angles(params)
        central_expect = 2.0 * math.asin(params.H * params.ell * params.tau / 2.0)
        central_err = abs(rep.central_angle - central_expect)
        ok = rep.max_noncentral <= math.pi / 2.0 + 1e-9 and central_err <= 1e-12
        outputs = {"angles": rep.to_dict(), "central_identity_error": central_err, "passed": ok}
    elif suite == "contact":
        if len(args.files) < 2:
            raise InvalidInput("contact suite needs the inner domain and the ambient domain")
        ambient = load_arcgon(args.files[1])
        cs = contact_set(domain, ambient, tol=args.tol)
        ok = cs.count() >= 2
        outputs = {"contact": cs.to_dict(), "elements": cs.count(), "passed": ok}
    else:  # pragma: no cover - argparse choices guard this
        raise InvalidInput(f"unknown suite {suite!r}")

    _emit(_report("verify", inputs, outputs, t0), args.report)
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# dimension


def _cmd_dimension(args) -> int:
    t0 = time.perf_counter()
    payload = _load_json(args.data)
    if "intervals_param" in payload:  # a contact-set file from construct/verify
        cs = ContactSet.from_dict(payload)
        if cs.intervals_param:
            data = np.asarray(cs.intervals_param, dtype=float)
            kind = "intervals"
        elif cs.points:
            data = np.asarray(cs.points, dtype=float)
            kind = "points"
        else:
            raise InvalidInput(f"{args.data}: contact set is empty")
    elif "intervals" in payload:
        data = np.asarray(payload["intervals"], dtype=float)
        kind = "intervals"
    elif "points" in payload:
        data = np.asarray(payload["points"], dtype=float)
        kind = "points"
    elif "values" in payload:
        data = np.asarray(payload["values"], dtype=float)
        kind = "points"
    else:
        raise InvalidInput("data file needs an 'intervals', 'points', or 'values' array")
    rep = estimate_dimension(data, args.jmin, args.jmax, kind=kind)
    _emit(
        _report(
            "dimension",
            {"data": args.data, "jmin": args.jmin, "jmax": args.jmax, "kind": kind},
            {"dimension": rep.to_dict()},
            t0,
        ),
        args.report,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# render


def _cmd_render(args) -> int:
    t0 = time.perf_counter()
    if not args.files:
        raise InvalidInput("render needs at least one input file")
    layers = []
    domains: list[ArcGon] = []
    for path in args.files:
        payload = _load_json(path)
        if "edges" in payload:
            gon = ArcGon.from_dict(payload)
            kind = (gon.meta or {}).get("kind", "")
            label = {
                "kgon": "domain",
                "cantor": "domain",
                "perturbed-lipschitz": "ambient",
                "perturbed-cantor": "ambient",
            }.get(kind, "domain" if not domains else "ambient")
            domains.append(gon)
            layers.append((label, gon))
        elif "points" in payload and "intervals_param" in payload:
            if not domains:
                raise InvalidInput(f"{path}: contact file listed before any domain")
            layers.append(("contact", (ContactSet.from_dict(payload), domains[0])))
        else:
            raise InvalidInput(f"{path}: unrecognized file (neither domain nor contact set)")
    # ambient first so the inner domain draws on top
    layers.sort(key=lambda kv: {"ambient": 0, "domain": 1, "erosion": 2, "contact": 3}.get(kv[0], 4))
    write_svg(args.svg, layers)
    _emit(
        _report(
            "render",
            {"files": list(args.files)},
            {"svg": args.svg, "layers": [label for label, _ in layers]},
            t0,
        ),
        args.report,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    p = _Parser(
        prog="cheeger-forge",
        description="Cheeger constants and maximal Cheeger sets of planar arc-gon domains.",
        epilog="CHEEGER_FORGE_THREADS caps worker threads for sample verification.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a domain family member from a spec file")
    c.add_argument("spec", help="JSON spec: {'kind':'kgon'|'cantor', ...}")
    c.add_argument("--out", help="domain output path (default: <spec>.domain.json)")
    c.add_argument("--ambient-out", help="perturbed ambient output path")
    c.add_argument("--contact-out", help="contact set output path")
    c.add_argument("--tol", type=float, default=1e-10, help="root residual tolerance")
    c.add_argument("--report", help="also write the JSON report here")
    c.set_defaults(fn=_cmd_construct)

    ch = sub.add_parser("cheeger", help="solve for the Cheeger constant and maximal set")
    ch.add_argument("domain", help="ArcGon JSON file")
    ch.add_argument("--tol", type=float, default=1e-10, help="bisection residual tolerance")
    ch.add_argument("--grid-step", type=float, default=None, help="raster step (default: bbox diag / 2048)")
    ch.add_argument("--report", help="also write the JSON report here")
    ch.set_defaults(fn=_cmd_cheeger)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("files", nargs="*", help="domain file (+ ambient file for the contact suite)")
    v.add_argument(
        "--suite",
        required=True,
        choices=["self-cheeger", "steiner", "tangent-balls", "angles", "contact"],
    )
    v.add_argument("--samples", type=int, default=1000, help="boundary/profile sample count")
    v.add_argument("--tol", type=float, default=1e-9, help="geometric tolerance")
    v.add_argument(
        "--radius",
        type=float,
        default=None,
        help="dilation radius for the steiner suite "
        "(default: area/perimeter, capped to stay admissible for concave arcs)",
    )
    v.add_argument("--report", help="also write the JSON report here")
    v.set_defaults(fn=_cmd_verify)

    d = sub.add_parser("dimension", help="box-counting dimension of a point/interval set")
    d.add_argument("data", help="JSON with 'intervals', 'points', or 'values', or a contact-set file")
    d.add_argument("--jmin", type=int, required=True, help="coarsest dyadic level")
    d.add_argument("--jmax", type=int, required=True, help="finest dyadic level")
    d.add_argument("--report", help="also write the JSON report here")
    d.set_defaults(fn=_cmd_dimension)

    r = sub.add_parser("render", help="render domains/contact sets to SVG")
    r.add_argument("files", nargs="*", help="domain and contact JSON files")
    r.add_argument("--svg", required=True, help="output SVG path")
    r.add_argument("--report", help="also write the JSON report here")
    r.set_defaults(fn=_cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NoSolution as exc:
        print(f"cheeger-forge: no solution: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except _USAGE_ERRORS as exc:
        print(f"cheeger-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, FallbackRequired) as exc:
        print(f"cheeger-forge: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CheegerForgeError as exc:  # any stragglers
        print(f"cheeger-forge: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
