"""JSON wire formats for matrices, sampled maps, scalar maps, and reports.

Exact scalars travel as strings ("p/q" for rationals, {"re": .., "im": ..}
for Gaussian rationals); ApproxC entries as [re, im] float pairs. All
writers go through canonical_json so that byte-identical reports come out
of identical runs.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import FileFormatError
from .matrices import C64, QC, QR, GroupTag, Mat, mat
from .scalars import GaussRational, format_rational, parse_rational

REGIMES = (QR, QC, C64)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256_digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def pretty_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# scalars


def scalar_to_json(x, regime: str):
    if regime == QR:
        return format_rational(Fraction(x))
    if regime == QC:
        g = x if isinstance(x, GaussRational) else GaussRational(Fraction(x), Fraction(0))
        return {"re": format_rational(g.re), "im": format_rational(g.im)}
    z = complex(x)
    return [z.real, z.imag]


def scalar_from_json(obj, regime: str):
    try:
        if regime == QR:
            return parse_rational(obj)
        if regime == QC:
            return GaussRational(parse_rational(obj["re"]), parse_rational(obj["im"]))
        return complex(obj[0], obj[1])
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise FileFormatError(f"bad scalar for regime {regime}: {obj!r}") from exc


# ---------------------------------------------------------------------------
# matrices and groups


def mat_to_json(a: Mat) -> dict:
    return {
        "regime": a.regime,
        "entries": [[scalar_to_json(a[i, j], a.regime) for j in range(a.n)] for i in range(a.n)],
    }


def mat_from_json(obj) -> Mat:
    try:
        regime = obj["regime"]
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"matrix object needs 'regime' and 'entries': {obj!r}") from exc
    if regime not in REGIMES:
        raise FileFormatError(f"unknown regime {regime!r}")
    rows = [[scalar_from_json(x, regime) for x in row] for row in entries]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise FileFormatError("entries must form a square matrix")
    return mat(rows, regime)


def mat_key(a: Mat) -> str:
    """Canonical lookup key for exact-match sample oracles."""
    return canonical_json(mat_to_json(a))


def group_to_json(g: GroupTag) -> dict:
    return {"family": g.family, "field": g.field, "n": g.n}


def group_from_json(obj) -> GroupTag:
    try:
        return GroupTag(obj["family"], obj["field"], int(obj["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad group object: {obj!r}") from exc
    except Exception as exc:
        raise FileFormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# scalar maps


def mulfunc_to_json(g) -> dict | None:
    from .scalarmaps import (
        CircleHomFunc,
        CircleTableFunc,
        GaussTableFunc,
        LatticeFunc,
        PowerConjFunc,
        PowerFunc,
        TableFunc,
    )

    if g is None:
        return None
    if isinstance(g, PowerFunc):
        return {
            "type": "power",
            "ambient": g.ambient,
            "c": format_rational(g.c),
            "neg": g.neg,
        }
    if isinstance(g, PowerConjFunc):
        return {
            "type": "powerconj",
            "k": format_rational(Fraction(g.k)),
            "m": format_rational(Fraction(g.m)),
        }
    if isinstance(g, TableFunc):
        return {
            "type": "table",
            "points": [[format_rational(a), format_rational(v)] for a, v in g.points],
        }
    if isinstance(g, GaussTableFunc):
        return {
            "type": "gausstable",
            "points": [
                [scalar_to_json(a, QC), scalar_to_json(v, QC)] for a, v in g.points
            ],
        }
    if isinstance(g, CircleTableFunc):
        return {
            "type": "circletable",
            "points": [
                [[a.real, a.imag], [v.real, v.imag]] for a, v in g.points
            ],
        }
    if isinstance(g, LatticeFunc):
        hom = g.hom
        return {
            "type": "latticehom",
            "generators": [format_rational(s.value()) for s in hom.lattice.generators],
            "images": [format_rational(v) for v in hom.images],
            "sign_image": hom.sign_image,
        }
    if isinstance(g, CircleHomFunc):
        hom = g.hom
        gens = []
        for gen in hom.lattice.generators:
            gens.append(
                {
                    "label": gen.label,
                    "angle": None if gen.angle is None else format_rational(gen.angle),
                    "witness": [gen.witness.real, gen.witness.imag],
                }
            )
        return {"type": "circlehom", "generators": gens, "images": [list(r) for r in hom.images]}
    raise FileFormatError(f"cannot serialize scalar map {type(g).__name__}")


def mulfunc_from_json(obj):
    from .mullattice import CircleLattice, angle_gen, hom_on_lattice, make_lattice
    from .mullattice import CircleHom
    from .scalarmaps import (
        CIRCLE,
        CircleHomFunc,
        CircleTableFunc,
        GaussTableFunc,
        LatticeFunc,
        PowerConjFunc,
        PowerFunc,
        TableFunc,
    )

    if obj is None:
        return None
    try:
        t = obj["type"]
        if t == "power":
            return PowerFunc(parse_rational(obj["c"]), obj.get("neg", "same"), obj.get("ambient", "Rstar"))
        if t == "powerconj":
            return PowerConjFunc(parse_rational(obj["k"]), parse_rational(obj["m"]))
        if t == "table":
            pts = tuple((parse_rational(a), parse_rational(v)) for a, v in obj["points"])
            return TableFunc(pts)
        if t == "gausstable":
            pts = tuple(
                (scalar_from_json(a, QC), scalar_from_json(v, QC)) for a, v in obj["points"]
            )
            return GaussTableFunc(pts)
        if t == "circletable":
            pts = tuple(
                (complex(a[0], a[1]), complex(v[0], v[1])) for a, v in obj["points"]
            )
            return CircleTableFunc(pts)
        if t == "latticehom":
            lat = make_lattice(*[parse_rational(s) for s in obj["generators"]])
            return LatticeFunc(
                hom_on_lattice(lat, [parse_rational(s) for s in obj["images"]], obj["sign_image"])
            )
        if t == "circlehom":
            gens = []
            for gobj in obj["generators"]:
                ang = None if gobj["angle"] is None else parse_rational(gobj["angle"])
                gens.append(
                    angle_gen(gobj["label"], ang, complex(gobj["witness"][0], gobj["witness"][1]))
                )
            lat = CircleLattice(tuple(gens))
            return CircleHomFunc(CircleHom(lat, tuple(tuple(r) for r in obj["images"])))
    except FileFormatError:
        raise
    except Exception as exc:
        raise FileFormatError(f"bad scalar map object: {exc}") from exc
    raise FileFormatError(f"unknown scalar map type {obj.get('type')!r}")


# ---------------------------------------------------------------------------
# automorphisms and sample maps


def auto_to_json(auto) -> dict:
    return {
        "group": group_to_json(auto.group),
        "kind": auto.kind,
        "sigma": auto.sigma,
        "t": mat_to_json(auto.t),
        "g": mulfunc_to_json(auto.g),
    }


def auto_from_json(obj):
    from .autos import make_automorphism

    try:
        group = group_from_json(obj["group"])
        kind = obj["kind"]
        sigma = obj["sigma"]
        t = mat_from_json(obj["t"])
        g = mulfunc_from_json(obj.get("g"))
    except FileFormatError:
        raise
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"automorphism object missing field: {exc}") from exc
    return make_automorphism(group, kind, sigma, t, g)


def samples_to_json(sample_map) -> dict:
    return {
        "group": group_to_json(sample_map.group),
        "samples": [[mat_to_json(a), mat_to_json(b)] for a, b in sample_map.samples],
    }


def samples_from_json(obj):
    from .localcheck import SampleMap

    try:
        group = group_from_json(obj["group"])
        pairs = tuple((mat_from_json(a), mat_from_json(b)) for a, b in obj["samples"])
    except FileFormatError:
        raise
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"sample map object missing field: {exc}") from exc
    return SampleMap(group, pairs)


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def dump_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(pretty_json(obj))
        fh.write("\n")
