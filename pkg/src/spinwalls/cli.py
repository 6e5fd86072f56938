"""Command-line front end: manifest in, deterministic JSON out.

Commands::

    spinwalls lattice info      -m FILE
    spinwalls index chi-line    -m FILE        (delta taken from [bundle] c1)
    spinwalls index chi-rank2   -m FILE
    spinwalls index vdim        -m FILE
    spinwalls walls enumerate   -m FILE  [--bound N] [--workers N]
    spinwalls certify           -m FILE  [--bound N] [--workers N]
    spinwalls surface check     -m FILE
    spinwalls surface threshold -m FILE
    spinwalls pairs chain       -m FILE
    spinwalls pairs stable      -m FILE
    spinwalls demo barlow|cp2|emptiness-sweep

Exit codes: 0 success, 2 validation failure, 3 internal formulation
disagreement (a bug trap).  Output is byte-identical for identical
inputs, whatever the worker count; --pretty only changes whitespace.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from . import __version__
from .errors import FormulationDisagreement, ValidationError
from .index_theory import (
    BundleTopology,
    NonCharacteristicWarning,
    chi_line,
    chi_rank2,
    vdim_instanton,
)
from .lattice import (
    is_characteristic,
    lattice_index,
    pairing,
    parse_lattice_spec,
    signature,
    vector,
)
from .manifest import (
    Manifest,
    load_manifest,
    parse_candidate,
    parse_int,
    parse_rational,
    parse_vector,
)
from .pairs import flip_chain, is_sigma_stable, nonempty_range
from .surfaces import (
    SurfaceInvariants,
    barlow_demo,
    spin_invariance_threshold,
    surface_consistency,
)
from .walls import (
    DEFAULT_MAX_BOX,
    WallQuery,
    emptiness_certificate,
    enumerate_walls,
)

ENV_MAX_BOX = "SPINWALLS_MAX_BOX"


def jsonable(value):
    """Exact JSON encoding: Fractions become ints or [num, den] pairs."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return [value.numerator, value.denominator]
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def emit(payload, pretty: bool) -> None:
    indent = 2 if pretty else None
    sys.stdout.write(json.dumps(jsonable(payload), indent=indent) + "\n")


# ---------------------------------------------------------------------------
# manifest -> domain objects

def _manifest_lattice(manifest: Manifest, section: str, key: str):
    spec = manifest.require(section, key)
    return parse_lattice_spec(spec)


def _build_query(manifest: Manifest, bound_override: int | None) -> WallQuery:
    where = f"{manifest.path} [query]"
    lattice = _manifest_lattice(manifest, "query", "lattice")
    c1 = parse_vector(manifest.require("query", "c1"), where)
    spin_c = parse_vector(manifest.require("query", "C"), where)
    p1_raw = manifest.get("query", "p1")
    c2_raw = manifest.get("query", "c2")
    if (p1_raw is None) == (c2_raw is None):
        raise ValidationError(f"{where}: give exactly one of p1 or c2")
    if p1_raw is not None:
        p1 = parse_int(p1_raw, where)
    else:
        p1 = pairing(lattice, c1, c1) - 4 * parse_int(c2_raw, where)
    r = parse_int(manifest.require("query", "r"), where)
    bound = parse_int(manifest.require("query", "bound"), where)
    if bound_override is not None:
        bound = bound_override
    center_raw = manifest.get("query", "center")
    center = parse_vector(center_raw, where) if center_raw is not None else None
    return WallQuery(lattice, c1, spin_c, p1, r, bound, center)


def _build_surface(manifest: Manifest) -> SurfaceInvariants:
    where = f"{manifest.path} [surface]"
    k2 = parse_int(manifest.require("surface", "K2"), where)
    pg = parse_int(manifest.require("surface", "pg"), where)
    q_raw = manifest.get("surface", "q")
    c2_raw = manifest.get("surface", "c2")
    return SurfaceInvariants(
        k_square=k2,
        p_g=pg,
        q=parse_int(q_raw, where) if q_raw is not None else 0,
        c2_top=parse_int(c2_raw, where) if c2_raw is not None else None,
    )


# ---------------------------------------------------------------------------
# command handlers

def _cmd_lattice_info(manifest: Manifest, args) -> dict:
    lattice = _manifest_lattice(manifest, "lattice", "spec")
    sig = signature(lattice)
    return {
        "rank": lattice.rank,
        "gram": [list(row) for row in lattice.gram],
        "signature": {"b_plus": sig.b_plus, "b_minus": sig.b_minus, "index": sig.index},
        "determinant": lattice.determinant,
        "unimodular": lattice.is_unimodular,
        "even": lattice.is_even,
    }


def _index_inputs(manifest: Manifest):
    lattice = _manifest_lattice(manifest, "lattice", "spec")
    where = f"{manifest.path} [spin]"
    spin_c = parse_vector(manifest.require("spin", "C"), where)
    return lattice, spin_c


def _cmd_index(manifest: Manifest, args) -> dict:
    lattice, spin_c = _index_inputs(manifest)
    where = f"{manifest.path} [bundle]"
    c1 = parse_vector(manifest.require("bundle", "c1"), where)
    characteristic = is_characteristic(lattice, spin_c)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonCharacteristicWarning)
        if args.action == "chi-line":
            value = chi_line(lattice, spin_c, c1)
            return {
                "value": value,
                "integral": value.denominator == 1,
                "characteristic": characteristic,
            }
        c2 = parse_int(manifest.require("bundle", "c2"), where)
        bundle = BundleTopology(c1, c2)
        if args.action == "chi-rank2":
            value = chi_rank2(lattice, spin_c, bundle)
            return {
                "value": value,
                "integral": value.denominator == 1,
                "characteristic": characteristic,
            }
        sig = signature(lattice)
        dim = vdim_instanton(lattice, bundle, sig.b_plus)
        return {
            "p1": bundle.p1(lattice),
            "b_plus": sig.b_plus,
            "vdim": dim.vdim,
            "d": dim.d,
            "even": dim.even,
        }


def _wall_payload(record) -> dict:
    return {
        "delta": list(record.delta),
        "e": list(record.e),
        "Delta": list(record.Delta),
        "e_square": record.e_square,
        "chi": record.chi,
        "orientation": record.orientation,
    }


def _certificate_payload(cert) -> dict:
    payload = {
        "status": cert.status,
        "eight_r": cert.eight_r,
        "minus_index": cert.minus_index,
        "derivation": list(cert.derivation),
    }
    if cert.search is not None:
        payload["box_search"] = "empty" if len(cert.search) == 0 else "nonempty"
        payload["walls_found"] = len(cert.search)
        payload["box_bound"] = cert.search.box_bound
    return payload


def _cmd_walls(manifest: Manifest, args) -> dict:
    query = _build_query(manifest, args.bound)
    result = enumerate_walls(query, workers=args.workers, max_box=args.max_box)
    certification = {
        "box_bound": result.box_bound,
        "center": list(result.center),
        "complete_within_box": result.complete_within_box,
        "candidates_examined": result.candidates_examined,
    }
    if query.matched:
        cert = emptiness_certificate(query, workers=args.workers, max_box=args.max_box)
        certification["theorem_certificate"] = _certificate_payload(cert)
    return {
        "walls": [_wall_payload(w) for w in result.walls],
        "certification": certification,
    }


def _cmd_certify(manifest: Manifest, args) -> dict:
    query = _build_query(manifest, args.bound)
    cert = emptiness_certificate(query, workers=args.workers, max_box=args.max_box)
    payload = {"certificate": cert.status}
    payload.update(_certificate_payload(cert))
    del payload["status"]
    return payload


def _cmd_surface(manifest: Manifest, args) -> dict:
    surface = _build_surface(manifest)
    report = surface_consistency(surface)
    if args.action == "check":
        return {
            "K2": surface.k_square,
            "pg": surface.p_g,
            "q": surface.q,
            "c2": report.c2_top,
            "chi_O": report.chi_o,
            "index": report.index,
            "b_plus": report.b_plus,
            "b_minus": report.b_minus,
            "b2": report.b2,
            "consistent": report.ok,
            "violations": list(report.violations),
        }
    where = f"{manifest.path} [surface]"
    r = parse_int(manifest.require("surface", "r"), where)
    return {
        "r": r,
        "metric_independent": spin_invariance_threshold(surface, r),
        "index": report.index,
        "eight_r": 8 * r,
    }


def _cmd_pairs(manifest: Manifest, args) -> dict:
    where = f"{manifest.path} [pairs]"
    deg_e = parse_rational(manifest.require("pairs", "degE"), where)
    if args.action == "chain":
        chain = flip_chain(deg_e)
        rng = nonempty_range(deg_e)
        return {
            "degE": deg_e,
            "nonempty_range": list(rng) if rng is not None else None,
            "chambers": [[lo, hi] for lo, hi in chain.chambers],
            "critical": list(chain.critical_values),
            "labels": {
                "max": list(chain.top_chamber) if chain.top_chamber else None,
                "zero": list(chain.zero_chamber) if chain.zero_chamber else None,
            },
        }
    sigma = parse_rational(manifest.require("pairs", "sigma"), where)
    candidates = [
        parse_candidate(raw, where) for raw in manifest.get_all("pairs", "candidate")
    ]
    verdicts = [
        {
            "degL": deg_l,
            "has_section": has_section,
            "ok": is_sigma_stable(deg_l, has_section, deg_e, sigma),
        }
        for deg_l, has_section in candidates
    ]
    return {
        "degE": deg_e,
        "sigma": sigma,
        "stable": all(v["ok"] for v in verdicts),
        "candidates": verdicts,
    }


def _demo_cp2() -> dict:
    from .lattice import diagonal_lattice

    plane = diagonal_lattice([1])
    bundle = BundleTopology((0,), 2)
    dim = vdim_instanton(plane, bundle, b_plus=1)
    return {"c2": bundle.c2, "p1": bundle.p1(plane), "vdim": dim.vdim, "degree": dim.d}


def _demo_emptiness_sweep(max_box: int) -> dict:
    from .lattice import diagonal_lattice

    runs = []
    for n in range(2, 10):
        lattice = diagonal_lattice([1] + [-1] * n)
        c1 = (1,) * (n + 1)
        minus_index = n - 1
        for r in range(1, 6):
            if 8 * r <= minus_index:
                continue
            query = WallQuery(
                lattice,
                c1=c1,
                spin_c=tuple(-x for x in c1),
                p1=pairing(lattice, c1, c1) - 8,
                r=r,
                bound=6,
            )
            cert = emptiness_certificate(query, max_box=max_box)
            runs.append(
                {
                    "lattice": f"1,-1x{n}",
                    "index": lattice_index(lattice),
                    "r": r,
                    "certificate": cert.status,
                    "box_empty": len(cert.search) == 0,
                }
            )
    return {"bound": 6, "runs": runs}


def _cmd_demo(args) -> dict:
    if args.action == "barlow":
        return barlow_demo(max_box=args.max_box)
    if args.action == "cp2":
        return _demo_cp2()
    return _demo_emptiness_sweep(args.max_box)


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwalls",
        description="Exact wall, index, surface, and chamber arithmetic.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    env_cap = os.environ.get(ENV_MAX_BOX)
    default_cap = int(env_cap) if env_cap else DEFAULT_MAX_BOX

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", "--manifest", help="manifest file path")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument(
        "--max-box",
        type=int,
        default=default_cap,
        help=f"cap on examined candidates (default {default_cap}, env {ENV_MAX_BOX})",
    )

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--bound", type=int, default=None, help="override the box bound")
    search.add_argument("--workers", type=int, default=1, help="parallel search slices")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", parents=[common])
    p.add_argument("action", choices=["info"])

    p = sub.add_parser("index", parents=[common])
    p.add_argument("action", choices=["chi-line", "chi-rank2", "vdim"])

    p = sub.add_parser("walls", parents=[common, search])
    p.add_argument("action", choices=["enumerate"])

    sub.add_parser("certify", parents=[common, search])

    p = sub.add_parser("surface", parents=[common])
    p.add_argument("action", choices=["check", "threshold"])

    p = sub.add_parser("pairs", parents=[common])
    p.add_argument("action", choices=["chain", "stable"])

    p = sub.add_parser("demo", parents=[common])
    p.add_argument("action", choices=["barlow", "cp2", "emptiness-sweep"])

    return parser


def _needs_manifest(command: str) -> bool:
    return command != "demo"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if _needs_manifest(args.command):
            if not args.manifest:
                raise ValidationError(f"command {args.command!r} requires -m/--manifest")
            manifest = load_manifest(args.manifest)
        if args.command == "lattice":
            payload = _cmd_lattice_info(manifest, args)
        elif args.command == "index":
            payload = _cmd_index(manifest, args)
        elif args.command == "walls":
            payload = _cmd_walls(manifest, args)
        elif args.command == "certify":
            payload = _cmd_certify(manifest, args)
        elif args.command == "surface":
            payload = _cmd_surface(manifest, args)
        elif args.command == "pairs":
            payload = _cmd_pairs(manifest, args)
        else:
            payload = _cmd_demo(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormulationDisagreement as exc:
        print(f"internal disagreement (bug): {exc}", file=sys.stderr)
        return 3
    emit(payload, args.pretty)
    return 0
