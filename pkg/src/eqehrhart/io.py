"""JSON encoding of polytopes, groups and reports.

Rationals are strings "p/q" (or plain integers), polynomials are coefficient
arrays in increasing degree, rational functions are {"num", "den"}.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import CycloNum, Poly, RationalGenFunction, rf_reduce
from .ehrhart import EhrhartData
from .equivariant import HStarReport
from .groups import (CharacterTable, FiniteMatrixGroup, as_matrix, bind_table,
                     char_table_cyclic, char_table_dihedral, char_table_product,
                     group_closure, user_table)
from .lattice import RationalPolytope, polytope_from_halfspaces


class MalformedInput(ValueError):
    """Input JSON does not describe a valid object."""


def rational_to_json(q):
    q = Fraction(q)
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_json(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise MalformedInput(f"expected an integer or 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {x!r}") from exc


def poly_to_json(p: Poly) -> list:
    return [rational_to_json(c) for c in p.coeffs] or [0]


def poly_from_json(xs) -> Poly:
    if not isinstance(xs, list):
        raise MalformedInput("polynomial must be a coefficient array")
    return Poly([rational_from_json(x) for x in xs])


def rf_to_json(f: RationalGenFunction) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rf_from_json(obj) -> RationalGenFunction:
    _require(obj, {"num", "den"})
    return rf_reduce(poly_from_json(obj["num"]), poly_from_json(obj["den"]))


def cyclo_to_json(x: CycloNum) -> dict:
    return {"order": x.order, "coeffs": [rational_to_json(c) for c in x.residue.coeffs]}


def cyclo_from_json(obj) -> CycloNum:
    if isinstance(obj, (int, str)):
        return CycloNum.rational(rational_from_json(obj))
    _require(obj, {"order", "coeffs"})
    return CycloNum(int(obj["order"]), [rational_from_json(c) for c in obj["coeffs"]])


def _require(obj, keys, optional=()):
    if not isinstance(obj, dict):
        raise MalformedInput("expected a JSON object")
    missing = set(keys) - set(obj)
    if missing:
        raise MalformedInput(f"missing keys: {sorted(missing)}")
    extra = set(obj) - set(keys) - set(optional)
    if extra:
        raise MalformedInput(f"unknown keys: {sorted(extra)}")


# -- inputs ---------------------------------------------------------------------

def _halfspace(row, n):
    if isinstance(row, dict):
        _require(row, {"normal", "offset"})
        a, b = row["normal"], row["offset"]
        if not isinstance(a, list) or len(a) != n:
            raise MalformedInput(f"halfspace normal must have {n} entries")
        return tuple(rational_from_json(x) for x in a), rational_from_json(b)
    if isinstance(row, list) and len(row) == n + 1:
        vals = [rational_from_json(x) for x in row]
        return tuple(vals[:n]), vals[n]
    raise MalformedInput('halfspace must be {"normal": [...], "offset": b} meaning a.x <= b')


def polytope_from_json(obj) -> RationalPolytope:
    """{"ambient_dim": n, "vertices": [...]} and/or "halfspaces": [{"normal", "offset"}, ...].

    Halfspaces are trusted: when vertices are present they win and the
    halfspaces are only shape-checked.
    """
    _require(obj, {"ambient_dim"}, {"vertices", "halfspaces"})
    n = obj["ambient_dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise MalformedInput("ambient_dim must be a nonnegative integer")
    hs = None
    if "halfspaces" in obj:
        if not isinstance(obj["halfspaces"], list):
            raise MalformedInput("halfspaces must be a list")
        hs = [_halfspace(row, n) for row in obj["halfspaces"]]
    if "vertices" in obj:
        vs = obj["vertices"]
        if not isinstance(vs, list) or not vs:
            raise MalformedInput("vertices must be a nonempty list")
        pts = []
        for v in vs:
            if not isinstance(v, list) or len(v) != n:
                raise MalformedInput(f"vertex {v!r} does not have {n} coordinates")
            pts.append(tuple(rational_from_json(x) for x in v))
        return RationalPolytope(pts, n)
    if hs is None:
        raise MalformedInput("need vertices or halfspaces")
    try:
        return polytope_from_halfspaces(hs, n)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def polytope_to_json(P: RationalPolytope) -> dict:
    return {"ambient_dim": P.ambient_dim,
            "vertices": [[rational_to_json(x) for x in v] for v in P.vertices]}


def group_from_json(obj) -> tuple[FiniteMatrixGroup, CharacterTable | None]:
    """Build a matrix group and, when a preset is named, its bound table.

    {"generators": [M, ...], "preset": "cyclic" | "dihedral" | "product",
     "labels": {...}}
    For "cyclic" the label "g" names the generator index; for "dihedral"
    "r" and "s" do; for "product" "factors" lists [preset, size] pairs and
    "images" maps generator names "i.g", "i.r", "i.s" to generator indices.
    Without a preset a "table" {"class_reps", "rows", "labels"} may be given.
    """
    _require(obj, {"generators"}, {"preset", "labels", "table"})
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise MalformedInput("generators must be a nonempty list of matrices")
    try:
        mats = [as_matrix(g) for g in gens]
    except (TypeError, ValueError) as exc:
        raise MalformedInput("generators must be integer matrices") from exc
    n = len(mats[0])
    if any(len(m) != n or any(len(r) != n for r in m) for m in mats):
        raise MalformedInput("generators must be square matrices of one size")
    G = group_closure(mats)
    preset = obj.get("preset")
    labels = obj.get("labels", {})
    if preset is None:
        if "table" not in obj:
            return G, None
        t = obj["table"]
        _require(t, {"class_reps", "rows"}, {"labels", "class_labels"})
        rows = [[cyclo_from_json(x) for x in r] for r in t["rows"]]
        try:
            return G, user_table(G, t["class_reps"], rows, t.get("labels"), t.get("class_labels"))
        except ValueError as exc:
            raise MalformedInput(str(exc)) from exc

    def pick(name):
        if name not in labels:
            raise MalformedInput(f"labels must name generator {name!r}")
        i = labels[name]
        if not isinstance(i, int) or not 0 <= i < len(mats):
            raise MalformedInput(f"label {name!r} must be a generator index")
        return mats[i]

    try:
        if preset == "cyclic":
            return G, bind_table(char_table_cyclic(G.order), G, {"g": pick("g")})
        if preset == "dihedral":
            if G.order % 2:
                raise MalformedInput("dihedral group must have even order")
            return G, bind_table(char_table_dihedral(G.order // 2), G,
                                 {"r": pick("r"), "s": pick("s")})
        if preset == "product":
            factors = labels.get("factors")
            images = labels.get("images")
            if not isinstance(factors, list) or not isinstance(images, dict):
                raise MalformedInput("product preset needs labels.factors and labels.images")
            tables = []
            for f in factors:
                kind, size = f
                tables.append(char_table_cyclic(size) if kind == "cyclic"
                              else char_table_dihedral(size))
            T = char_table_product(*tables)
            return G, bind_table(T, G, {k: mats[i] for k, i in images.items()})
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(str(exc)) from exc
    raise MalformedInput(f"unknown preset {preset!r}")


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


# -- reports --------------------------------------------------------------------

def ehrhart_to_json(E: EhrhartData, P: RationalPolytope | None = None) -> dict:
    out = {
        "dim": E.dim,
        "denominator": E.N,
        "counts": list(E.counts),
        "hstar": poly_to_json(E.hstar),
        "denom_exponent": E.denom_exponent,
        "series": rf_to_json(E.series),
        "period": E.min_period,
        "pip": E.is_pip,
    }
    if E.quasi is not None:
        out["quasipolynomial"] = [[rational_to_json(c) for c in row] for row in E.quasi.table]
    if P is not None:
        out["polytope"] = polytope_to_json(P)
    return out


def hstar_to_json(R: HStarReport) -> dict:
    return {
        "classes": [{"label": lab, "size": s} for lab, s in zip(R.class_labels, R.class_sizes)],
        "irreducibles": R.irreducible_labels,
        "hstar_per_class": [rf_to_json(h) for h in R.hstar_per_class],
        "is_polynomial": R.is_polynomial,
        "coefficients": [[rational_to_json(x) for x in c.values] for c in R.coefficients],
        "multiplicities": (None if R.multiplicities is None
                           else [list(v.multiplicities) for v in R.multiplicities]),
        "is_effective": R.is_effective,
        "order_truncated": R.order_truncated,
    }


def canonical(obj) -> str:
    """Canonical text form used for round-trip comparisons."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
