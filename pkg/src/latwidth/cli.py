"""Command line front end.

Exit codes: 0 verdict pass, 1 theorem violation or counterexample, 2 input
or hypothesis error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from functools import cmp_to_key
from pathlib import Path
from typing import Any

from . import io, minkowski as mk, width as wd
from .corpus import FAMILIES, CorpusSpec, generate_corpus
from .errors import HypothesisError, LatwidthError, TheoremViolation
from .lattice import is_centrally_symmetric
from .oracle import oracle_directions
from .polytope import HPolyhedron, VPolytope, affine_image, support, to_vpolytope

log = logging.getLogger("latwidth")

COMMANDS = (
    "width", "directions", "dual-body", "check-main", "verify-3d", "verify-vertex-bound",
    "verify-packing", "verify-equality", "recognize-cube", "recognize-cross", "layering",
    "mod3", "gen", "oracle",
)
EXIT_PASS, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


def _vec(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _need_v(inst) -> VPolytope:
    if isinstance(inst, VPolytope):
        return inst
    return to_vpolytope(inst)


def _recenter(P: VPolytope) -> VPolytope:
    ok, c = is_centrally_symmetric(P)
    if not ok:
        raise HypothesisError("central symmetry")
    if any(x.denominator != 1 for x in c):
        raise HypothesisError("integral centre", f"centre {c} is not a lattice point")
    shift = tuple(-x for x in c)
    log.info("re-centering by %s", [int(x) for x in shift])
    return affine_image(P, t=shift)


def _run(command: str, flags: argparse.Namespace, inst) -> tuple[bool, dict[str, Any]]:
    """Return ``(verdict_pass, witnesses)``."""
    if command in ("width", "directions"):
        cert = wd.lattice_width(inst)
        w = {"width": cert.width_value, "classification": cert.classification,
             "enumeration_radius": cert.enumeration_radius}
        if command == "directions" or cert.directions:
            w["directions"] = cert.directions
            w["count"] = len(cert.directions)
        if cert.direction_lattice:
            w["direction_lattice"] = cert.direction_lattice
        if command == "directions":
            w["certificate"] = cert
        return True, w
    if command == "dual-body":
        rep = wd.dual_body(wd.lattice_width(inst))
        return rep.passed, {"report": rep}
    if command == "check-main":
        rep = wd.check_direction_bound(inst)
        return rep.passed, {"checks": rep.checks, **rep.witnesses}
    if command == "oracle":
        P = _need_v(inst)
        width, dirs = oracle_directions(P, flags.radius)
        return True, {"width": width, "directions": sorted(dirs), "radius": flags.radius}

    P = _need_v(inst)
    if flags.recenter:
        P = _recenter(P)
    if command == "recognize-cube":
        r = mk.recognize_standard_cube(P)
        return True, {"accepted": bool(r), "result": r}
    if command == "recognize-cross":
        r = mk.recognize_cross_polytope(P)
        return True, {"accepted": bool(r), "result": r}
    if command == "layering":
        rep = mk.facet_layering(P)
        return rep.passed, {"report": rep}
    if command == "mod3":
        if not flags.x or not flags.y:
            raise HypothesisError("--x and --y given")
        z, w = mk.mod3_complete(P, _vec(flags.x), _vec(flags.y))
        return True, {"x": _vec(flags.x), "y": _vec(flags.y), "z": z, "w": w}
    fn = {
        "verify-3d": mk.verify_3d_bound,
        "verify-vertex-bound": mk.verify_vertex_bound,
        "verify-packing": mk.verify_packing,
        "verify-equality": mk.verify_mink_equality,
    }[command]
    rep = fn(P)
    return rep.passed, {"checks": rep.checks, **rep.witnesses}


def dispatch(command: str, flags: argparse.Namespace, inst) -> tuple[dict, int]:
    """Run one command on a parsed instance; returns ``(report, exit_code)``."""
    start = time.perf_counter()
    report: dict[str, Any] = {"command": command}
    if inst is not None:
        report["instance_digest"] = io.instance_digest(inst)
    try:
        if command not in COMMANDS:
            raise LatwidthError(f"unknown command {command!r}")
        ok, witnesses = _run(command, flags, inst)
        report["verdict"] = "pass" if ok else "fail"
        report["witnesses"] = witnesses
        code = EXIT_PASS if ok else EXIT_VIOLATION
    except TheoremViolation as exc:
        report["verdict"] = "fail"
        report["witnesses"] = {"violation": str(exc)}
        code = EXIT_VIOLATION
    except (LatwidthError, ValueError) as exc:
        report["verdict"] = "error"
        report["witnesses"] = {"error": str(exc)}
        code = EXIT_ERROR
    report["timing"] = {"seconds": f"{time.perf_counter() - start:.6f}"}
    return io.to_jsonable(report), code


def _svg(P: VPolytope, directions, path: Path) -> None:
    """Write polygon ``P`` with the supporting line pairs of each width direction."""
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    pad = max(hi_x - lo_x, hi_y - lo_y, 1) / 2
    lo_x, hi_x, lo_y, hi_y = lo_x - pad, hi_x + pad, lo_y - pad, hi_y + pad
    size = 400
    span = max(hi_x - lo_x, hi_y - lo_y)

    def sx(x):
        return float((x - lo_x) / span * size)

    def sy(y):
        return float((hi_y - y) / span * size)

    verts = _cyclic(P)
    poly = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in verts)
    lines = []
    for v in directions:
        if v <= tuple(-a for a in v):
            continue
        for level in (support(P, v), -support(P, tuple(-a for a in v))):
            seg = _clip_line(v, level, lo_x, hi_x, lo_y, hi_y)
            if seg:
                (x0, y0), (x1, y1) = seg
                lines.append(f'<line x1="{sx(x0):.3f}" y1="{sy(y0):.3f}" x2="{sx(x1):.3f}" '
                             f'y2="{sy(y1):.3f}" stroke="#c33" stroke-dasharray="4 3"/>')
    body = "\n  ".join([f'<polygon points="{poly}" fill="#9bd" stroke="#135"/>'] + lines)
    path.write_text(f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
                    f'viewBox="0 0 {size} {size}">\n  {body}\n</svg>\n')


def _cyclic(P: VPolytope):
    V = list(P.vertices)
    if len(V) < 3:
        return V
    cx = sum(v[0] for v in V) / len(V)
    cy = sum(v[1] for v in V) / len(V)

    def key(v):
        dx, dy = v[0] - cx, v[1] - cy
        return (0 if (dy > 0 or (dy == 0 and dx > 0)) else 1)

    # exact angular order: upper half-plane first, then by cross product
    def cmp(a, b):
        ka, kb = key(a), key(b)
        if ka != kb:
            return ka - kb
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(V, key=cmp_to_key(cmp))


def _clip_line(v, level, lo_x, hi_x, lo_y, hi_y):
    a, b = v
    pts = []
    if b != 0:
        for x in (lo_x, hi_x):
            y = (level - a * x) / b
            if lo_y <= y <= hi_y:
                pts.append((x, y))
    if a != 0:
        for y in (lo_y, hi_y):
            x = (level - b * y) / a
            if lo_x <= x <= hi_x:
                pts.append((x, y))
    pts = sorted(set(pts))
    return (pts[0], pts[-1]) if len(pts) >= 2 else None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latwidth", description="Exact lattice width and lattice point theorem checks.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("instance", nargs="?", help="instance JSON file ('-' for stdin)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--radius", type=int, default=3, help="oracle box radius")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--family", default="cube", choices=FAMILIES)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--translate", action="store_true", help="gen: add random integer translations")
    p.add_argument("--svg", help="d=2: write a picture of S and its width directions")
    p.add_argument("--recenter", action="store_true",
                   help="translate a lattice-centred symmetric polytope to the origin first")
    p.add_argument("--x", help="mod3: first point, comma separated")
    p.add_argument("--y", help="mod3: second point, comma separated")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _setup_logging(verbose: bool) -> None:
    # own handler so logs reach the current stderr even under an embedding logger config
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    log.propagate = False


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    flags = parser.parse_args(argv)
    _setup_logging(flags.verbose)
    cmd = flags.command
    if cmd not in COMMANDS:
        log.error("unknown command %r", cmd)
        _emit(io.dumps({"command": cmd, "verdict": "error",
                        "witnesses": {"error": f"unknown command {cmd!r}"}}), flags.out)
        return EXIT_ERROR

    if cmd == "gen":
        try:
            base = None
            if flags.instance:
                base = _need_v(_read_instance(flags.instance))
            spec = CorpusSpec(flags.seed, flags.dim, flags.family, flags.bound, flags.count,
                              base=base, translate=flags.translate)
            corpus = generate_corpus(spec)
        except (LatwidthError, ValueError, OSError) as exc:
            log.error("%s", exc)
            return EXIT_ERROR
        doc = {"format_version": io.FORMAT_VERSION,
               "spec": {"seed": spec.seed, "dim": spec.dim, "family": spec.family,
                        "bound": spec.bound, "count": spec.count, "translate": spec.translate},
               "instances": [io.instance_to_dict(P) for P in corpus]}
        _emit(io.dumps(doc), flags.out)
        return EXIT_PASS

    if not flags.instance:
        log.error("command %s needs an instance file", cmd)
        return EXIT_ERROR
    try:
        inst = _read_instance(flags.instance)
    except (LatwidthError, OSError) as exc:
        _emit(io.dumps({"command": cmd, "verdict": "error", "witnesses": {"error": str(exc)}}), flags.out)
        log.error("%s", exc)
        return EXIT_ERROR

    report, code = dispatch(cmd, flags, inst)
    if report["verdict"] == "error":
        log.error("%s", report["witnesses"]["error"])
    if flags.svg:
        _maybe_svg(cmd, inst, report, Path(flags.svg))
    _emit(io.dumps(report, indent=2), flags.out)
    return code


def _maybe_svg(cmd, inst, report, path: Path) -> None:
    if inst.dim_ambient != 2 or isinstance(inst, HPolyhedron):
        log.warning("--svg needs a 2-dimensional V-polytope; skipped")
        return
    dirs = report.get("witnesses", {}).get("directions")
    if dirs is None:
        try:
            dirs = wd.lattice_width(inst).directions
        except LatwidthError:
            dirs = ()
    _svg(inst, [tuple(v) for v in dirs], path)


def _read_instance(name: str):
    text = sys.stdin.read() if name == "-" else Path(name).read_text(encoding="utf-8")
    return io.parse_instance(text)


if __name__ == "__main__":
    sys.exit(main())
