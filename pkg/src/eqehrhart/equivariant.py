"""Equivariant Ehrhart series and H*-series of invariant rational polytopes.

A polytope ``P`` in ``R^n`` and a finite group of integer matrices acting on
``Z^n`` form a setup when every ``g(P)`` is a lattice translate of ``P``.
The action is lifted to ``Z^(1+n)`` as ``(y0, x) -> (y0, g x + y0 v_g)``, and
all determinants are taken on the invariant span ``W`` of ``{1} x P``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _intlinalg as la
from .algebra import Poly, RationalGenFunction, rf_expand, rf_reduce
from .ehrhart import EhrhartData, ehrhart
from .groups import (CharacterTable, ClassFunction, FiniteMatrixGroup, VirtualCharacter,
                     decompose, det_factor, is_effective)
from .lattice import (RationalPolytope, _Counter, polytope_from_halfspaces,
                      sublattice_index)


class NotInvariant(ValueError):
    """Some g(P) is not a lattice translate of P."""


class RouteMismatch(AssertionError):
    """The two independent fixed-point routes disagree."""


def _lexmin(vs):
    return min(vs)


@dataclass
class EquivariantSetup:
    P: RationalPolytope
    G: FiniteMatrixGroup
    translations: list[tuple[int, ...]]
    lift: list[tuple[tuple[int, ...], ...]]
    invariant_point: tuple[Fraction, ...]
    lam: int
    W_basis: list[tuple[int, ...]]
    W_action: list[list[list[int]]]
    index: int | None
    table: CharacterTable | None = None
    workers: int | None = None
    _fixed: dict = field(default_factory=dict, repr=False)
    _ehr: dict = field(default_factory=dict, repr=False)
    _routeB: dict = field(default_factory=dict, repr=False)

    @property
    def classes(self) -> list[list[int]]:
        return self.G.classes

    @property
    def class_reps(self) -> list[int]:
        return self.G.class_reps

    def class_labels(self) -> list[str]:
        if self.table is not None and self.table.class_labels:
            return list(self.table.class_labels)
        return [f"class{c}" for c in range(len(self.G.classes))]

    def affine_map(self, g: int, x):
        A = self.G.elements[g]
        v = self.translations[g]
        return tuple(sum(A[i][j] * x[j] for j in range(len(x))) + v[i] for i in range(len(x)))


def _translation(P: RationalPolytope, A) -> tuple[int, ...]:
    image = [tuple(la.matvec(A, v)) for v in P.vertices]
    v = tuple(a - b for a, b in zip(_lexmin(P.vertices), _lexmin(image)))
    if any(x.denominator != 1 for x in v):
        raise NotInvariant("g(P) is a non-lattice translate of P")
    moved = {tuple(a + b for a, b in zip(p, v)) for p in image}
    if moved != set(P.vertices):
        raise NotInvariant("g(P) is not a translate of P")
    return tuple(int(x) for x in v)


def validate_setup(P: RationalPolytope, G: FiniteMatrixGroup,
                   table: CharacterTable | None = None, base_vertex: int = 0,
                   workers: int | None = None) -> EquivariantSetup:
    if P.is_empty():
        raise ValueError("empty polytope")
    n = P.ambient_dim
    if G.ambient_dim != n:
        raise ValueError("group and polytope live in different dimensions")
    vs = [_translation(P, A) for A in G.elements]
    pt = G.product_table
    for g, A in enumerate(G.elements):
        for h in range(G.order):
            lhs = vs[pt[g][h]]
            rhs = tuple(a + b for a, b in zip(la.matvec(A, vs[h]), vs[g]))
            if lhs != rhs:
                raise NotInvariant("translations violate the cocycle condition")
    lift = []
    for A, v in zip(G.elements, vs):
        rows = [(1,) + (0,) * n] + [(v[i],) + tuple(A[i]) for i in range(n)]
        lift.append(tuple(rows))
    p = P.vertices[base_vertex]
    total = [Fraction(0)] * n
    for g in range(G.order):
        A, v = G.elements[g], vs[g]
        img = la.matvec(A, p)
        total = [t + a + b for t, a, b in zip(total, img, v)]
    inv_pt = tuple(t / G.order for t in total)
    lam = lcm(1, *(x.denominator for x in inv_pt))

    H = [(Fraction(1),) + v for v in P.vertices]
    W = la.saturate(H, n + 1)
    WT = [list(col) for col in zip(*W)]
    W_action = []
    for L in lift:
        cols = []
        for b in W:
            c = la.solve(WT, la.matvec(L, b))
            if c is None or la.matvec(WT, c) != la.matvec(L, b) \
                    or any(x.denominator != 1 for x in c):
                raise NotInvariant("lifted action does not preserve W")
            cols.append([int(x) for x in c])
        W_action.append([list(r) for r in zip(*cols)])

    # [M:N] with e the primitive lattice vector through the vertex barycenter.  A linear
    # action on a polytope whose affine hull misses the origin uses M = span(P) ∩ Z^n.
    bary = [sum(col) / len(P.vertices) for col in zip(*P.vertices)]
    linear = not any(any(v) for v in vs)
    off_origin = len(la.saturate(P.vertices, n)) == P.affine_dim + 1
    if linear and off_origin and any(bary):
        index = sublattice_index(la.saturate(P.vertices, n), G.elements, la.primitive(bary))
    else:
        # the lifted lattice has no G-orthogonal height grading in general
        index = None

    return EquivariantSetup(P, G, vs, lift, inv_pt, lam, [tuple(b) for b in W], W_action,
                            index, table, workers)


def fixed_polytope(setup: EquivariantSetup, g: int) -> RationalPolytope:
    """Hull of the <g>-orbit averages of the vertices of P."""
    if g in setup._fixed:
        return setup._fixed[g]
    G = setup.G
    orbit = [0]
    while True:
        nxt = G.mul(g, orbit[-1])
        if nxt == 0:
            break
        orbit.append(nxt)
    pts = []
    for v in setup.P.vertices:
        acc = [Fraction(0)] * len(v)
        for h in orbit:
            acc = [a + b for a, b in zip(acc, setup.affine_map(h, v))]
        pts.append(tuple(a / len(orbit) for a in acc))
    Q = RationalPolytope(pts, setup.P.ambient_dim)
    setup._fixed[g] = Q
    return Q


def fixed_ehrhart(setup: EquivariantSetup, g: int) -> EhrhartData:
    if g not in setup._ehr:
        setup._ehr[g] = ehrhart(fixed_polytope(setup, g), setup.workers)
    return setup._ehr[g]


def _route_b(setup: EquivariantSetup, g: int):
    """Fixed points counted from the facets of P on the fixed sublattice."""
    if g in setup._routeB:
        return setup._routeB[g]
    W = setup.W_basis
    r = len(W)
    gens = [la.solve([list(c) for c in zip(*W)], [Fraction(1)] + list(v))
            for v in setup.P.vertices]
    cone_facets = [ray for ray, _ in la.extreme_rays(gens)]
    heights = [b[0] for b in W]
    R = setup.W_action[g]
    F = la.integer_kernel([[R[i][j] - (i == j) for j in range(r)] for i in range(r)], r)
    fh = [sum(h * x for h, x in zip(heights, f)) for f in F]
    step, U = la.ext_gcd_reduce(fh)
    Fp = [[sum(U[i][k] * F[k][j] for k in range(len(F))) for j in range(r)]
          for i in range(len(F))]
    base, dirs = Fp[0], Fp[1:]
    halfspaces = []
    for a in cone_facets:
        a0 = sum(x * y for x, y in zip(a, base))
        ad = [sum(x * y for x, y in zip(a, d)) for d in dirs]
        # a.(base*m/step + sum w_i d_i) >= 0
        halfspaces.append((tuple(-x for x in ad), Fraction(a0, step)))
    if not dirs:
        result = (step, None, all(b >= 0 for _, b in halfspaces))
    else:
        Q = polytope_from_halfspaces(halfspaces, len(dirs))
        result = (step, _Counter(Q), True)
    setup._routeB[g] = result
    return result


def fixed_point_count(setup: EquivariantSetup, g: int, m: int) -> int:
    """Number of x in mP ∩ Z^n with g(x) + m v_g = x."""
    if m == 0:
        return 1
    step, counter, feasible = _route_b(setup, g)
    if m % step or not feasible:
        return 0
    return 1 if counter is None else counter.count(m)


def denominator_factor(setup: EquivariantSetup, g: int) -> Poly:
    """det(I - t * lift(g)) restricted to W."""
    return det_factor(setup.W_action[g])


@dataclass
class HStarReport:
    class_labels: list[str]
    class_sizes: list[int]
    hstar_per_class: list[RationalGenFunction]
    is_polynomial: bool
    coefficients: list[ClassFunction]
    multiplicities: list[VirtualCharacter] | None
    is_effective: bool | None
    order_truncated: int | None
    irreducible_labels: list[str] | None = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def identity_hstar(self) -> RationalGenFunction:
        return self.hstar_per_class[0]

    def effectiveness_note(self) -> str:
        if self.is_polynomial:
            return "effective" if self.is_effective else "not effective"
        return "not-applicable (non-polynomial)"

    def __str__(self) -> str:
        lines = []
        for lab, h in zip(self.class_labels, self.hstar_per_class):
            lines.append(f"H*({lab}) = {h}")
        lines.append(f"polynomial: {self.is_polynomial}; {self.effectiveness_note()}")
        if self.multiplicities is not None:
            for j, v in enumerate(self.multiplicities):
                lines.append(f"  t^{j}: {v}")
        return "\n".join(lines)


def hstar_series(setup: EquivariantSetup, order: int | None = None) -> HStarReport:
    reps = setup.class_reps
    per_class = []
    for g in reps:
        E = fixed_ehrhart(setup, g).series
        D = denominator_factor(setup, g)
        per_class.append(rf_reduce(E.num * D, E.den))
    polynomial = all(h.is_polynomial() for h in per_class)
    if polynomial:
        deg = max(h.num.degree for h in per_class)
        coeffs = [ClassFunction(tuple(h.num[j] for h in per_class)) for j in range(deg + 1)]
        truncated = None
    else:
        if order is None:
            order = 2 * (setup.P.affine_dim + 1) * max(
                fixed_ehrhart(setup, g).N for g in reps)
        expansions = [rf_expand(h, order) for h in per_class]
        coeffs = [ClassFunction(tuple(e[j] for e in expansions)) for j in range(order + 1)]
        truncated = order
    mults = None
    effective = None
    labels = None
    if setup.table is not None:
        mults = [decompose(c, setup.table) for c in coeffs]
        labels = list(setup.table.labels)
        if polynomial:
            effective = all(is_effective(v) for v in mults)
    return HStarReport(setup.class_labels(), setup.G.class_sizes, per_class, polynomial,
                       coeffs, mults, effective, truncated, labels)


def equivariant_series(setup: EquivariantSetup, order: int,
                       check: bool = True) -> list[ClassFunction]:
    """chi_{mP} for m = 0..order, by fixed-point enumeration on each class.

    With ``check`` the counts are compared against the expansion of the
    Ehrhart series of each fixed polytope.
    """
    reps = setup.class_reps
    table = [[fixed_point_count(setup, g, m) for m in range(order + 1)] for g in reps]
    if check:
        for c, g in enumerate(reps):
            expected = rf_expand(fixed_ehrhart(setup, g).series, order)
            if [Fraction(x) for x in table[c]] != expected:
                m = next(i for i, (a, b) in enumerate(zip(table[c], expected)) if a != b)
                raise RouteMismatch(
                    f"class {setup.class_labels()[c]}: enumeration gives {table[c][m]} "
                    f"but the Ehrhart series gives {expected[m]} at m={m}")
    return [ClassFunction(tuple(Fraction(table[c][m]) for c in range(len(reps))))
            for m in range(order + 1)]


def orbit_count(setup: EquivariantSetup, chi: ClassFunction) -> Fraction:
    """Burnside: number of G-orbits on the points counted by chi."""
    return sum(s * v for s, v in zip(setup.G.class_sizes, chi.values)) / setup.G.order
