"""Rational polytopes, integer sublattices, and lattice-point enumeration."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _intlinalg as la


class DegeneratePolytope(ValueError):
    """Raised when a full-dimensional polytope was required."""


def _vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


# -- sublattices -----------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int) -> "Sublattice":
        """Saturated sublattice spanned (over Q) by ``vectors``."""
        return cls(ambient_dim, tuple(la.saturate(vectors, ambient_dim)))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, x) -> tuple[Fraction, ...] | None:
        """Coefficients c with x = sum c_i basis_i, or None if x is off the span."""
        if not self.basis:
            return () if all(Fraction(t) == 0 for t in x) else None
        A = [list(col) for col in zip(*self.basis)]
        return None if (c := la.solve(A, list(map(Fraction, x)))) is None or \
            la.matvec(A, c) != [Fraction(t) for t in x] else tuple(c)

    def __contains__(self, x) -> bool:
        c = self.coordinates(x)
        return c is not None and all(t.denominator == 1 for t in c)

    def in_span(self, x) -> bool:
        return self.coordinates(x) is not None


def fixed_sublattice(A) -> Sublattice:
    """Saturated lattice of integer vectors fixed by the square matrix A."""
    n = len(A)
    M = [[A[i][j] - (i == j) for j in range(n)] for i in range(n)]
    return Sublattice(n, tuple(la.integer_kernel(M, n)))


# -- polytopes -------------------------------------------------------------

class RationalPolytope:
    """Convex hull of finitely many rational points.

    Duplicate and non-vertex points are discarded on construction, so
    ``vertices`` is always irredundant.  An empty vertex list denotes the
    empty polytope.
    """

    def __init__(self, vertices: Iterable, ambient_dim: int | None = None,
                 halfspaces=None, _trusted: bool = False):
        pts = list(dict.fromkeys(_vec(v) for v in vertices))
        if ambient_dim is None:
            if not pts:
                raise ValueError("ambient_dim required for the empty polytope")
            ambient_dim = len(pts[0])
        if any(len(p) != ambient_dim for p in pts):
            raise ValueError("vertex of wrong dimension")
        self.ambient_dim = ambient_dim
        self._chart = None
        self._halfspaces = halfspaces
        self._counter = None
        if pts and not _trusted:
            pts = _irredundant(pts, ambient_dim)
        self.vertices: tuple[tuple[Fraction, ...], ...] = tuple(pts)
        if pts:
            diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
            self.affine_dim = la.rank(diffs) if diffs else 0
        else:
            self.affine_dim = -1

    def __repr__(self) -> str:
        vs = [[str(x) for x in v] for v in self.vertices]
        return f"RationalPolytope({vs})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolytope):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and set(self.vertices) == set(other.vertices))

    def __hash__(self) -> int:
        return hash((self.ambient_dim, frozenset(self.vertices)))

    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.ambient_dim

    @property
    def halfspaces(self) -> list[tuple[tuple[int, ...], Fraction]]:
        if self._halfspaces is None:
            self._halfspaces = hull_halfspaces(self)
        return self._halfspaces

    def contains(self, x) -> bool:
        x = _vec(x)
        if self.is_full_dimensional:
            return all(sum(a * t for a, t in zip(n, x)) <= b for n, b in self.halfspaces)
        chart = affine_chart(self)
        c = chart.to_chart(x)
        if c is None:
            return False
        if chart.dim == 0:
            return True
        return all(sum(a * t for a, t in zip(n, c)) <= b for n, b in chart.polytope.halfspaces)

    def dilate(self, m) -> "RationalPolytope":
        m = Fraction(m)
        return RationalPolytope([tuple(m * x for x in v) for v in self.vertices],
                                self.ambient_dim, _trusted=m != 0)

    def translate(self, v) -> "RationalPolytope":
        v = _vec(v)
        return RationalPolytope([tuple(a + b for a, b in zip(p, v)) for p in self.vertices],
                                self.ambient_dim, _trusted=True)

    def linear_image(self, A) -> "RationalPolytope":
        return RationalPolytope([tuple(la.matvec(A, p)) for p in self.vertices],
                                len(A))

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


def _homogenize(v) -> tuple[Fraction, ...]:
    return (Fraction(1),) + tuple(v)


def _full_dim_facets(pts, n):
    """Facets of a full-dimensional hull as (normal, offset, tight-mask)."""
    G = [la.integer_row(_homogenize(p)) for p in pts]
    try:
        rays = la.extreme_rays(G)
    except ValueError as exc:
        raise DegeneratePolytope("polytope is not full-dimensional") from exc
    facets = []
    for ray, mask in rays:
        a0, rest = ray[0], ray[1:]
        normal = tuple(-x for x in rest)
        g = 0
        for x in normal:
            g = gcd(g, x)
        if g == 0:
            continue
        facets.append((tuple(x // g for x in normal), Fraction(a0, g), mask))
    return facets


def _irredundant(pts, n):
    if len(pts) == 1:
        return pts
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    d = la.rank(diffs)
    if d == 0:
        return pts[:1]
    if d < n:
        chart = _AffineChart.build(pts, n)
        keep = _irredundant_indices(chart.chart_points, d)
        return [pts[i] for i in keep]
    keep = _irredundant_indices(pts, n)
    return [pts[i] for i in keep]


def _irredundant_indices(pts, n):
    facets = _full_dim_facets(pts, n)
    keep = []
    for i in range(len(pts)):
        normals = [f[0] for f in facets if f[2] >> i & 1]
        if len(normals) >= n and la.rank(normals) == n:
            keep.append(i)
    return keep


def hull_halfspaces(P: RationalPolytope) -> list[tuple[tuple[int, ...], Fraction]]:
    """Irredundant facet inequalities <a, x> <= b with primitive integer a."""
    if P.is_empty():
        return []
    if not P.is_full_dimensional:
        raise DegeneratePolytope(
            "hull_halfspaces needs a full-dimensional polytope; "
            "re-coordinatize with restrict_to_sublattice or affine_chart first")
    if P.ambient_dim == 0:
        return []
    return sorted((a, b) for a, b, _ in _full_dim_facets(list(P.vertices), P.ambient_dim))


def polytope_from_halfspaces(halfspaces, n: int) -> RationalPolytope:
    """Vertices of the bounded polytope {x : <a,x> <= b for all (a,b)}."""
    M = []
    for a, b in halfspaces:
        M.append(la.integer_row([Fraction(b)] + [-Fraction(x) for x in a]))
    M.append(tuple([1] + [0] * n))
    rays = la.extreme_rays(M)
    verts = []
    for ray, _ in rays:
        if ray[0] == 0:
            raise ValueError("halfspace system is unbounded")
        verts.append(tuple(Fraction(x, ray[0]) for x in ray[1:]))
    return RationalPolytope(verts, n)


def denominator(P: RationalPolytope) -> int:
    return lcm(1, *(x.denominator for v in P.vertices for x in v))


def restrict_to_sublattice(P: RationalPolytope, L: Sublattice) -> RationalPolytope:
    """Express P in the coordinates of L's basis."""
    coords = []
    for v in P.vertices:
        c = L.coordinates(v)
        if c is None:
            raise ValueError(f"vertex {v} lies outside the span of the sublattice")
        coords.append(c)
    return RationalPolytope(coords, L.rank, _trusted=True)


def free_sum(A: RationalPolytope, B: RationalPolytope) -> RationalPolytope:
    """Conv(A x {0} union {0} x B); both summands must contain the origin."""
    for Q in (A, B):
        if not Q.contains([0] * Q.ambient_dim):
            raise ValueError("free_sum requires both summands to contain the origin")
    za = (Fraction(0),) * A.ambient_dim
    zb = (Fraction(0),) * B.ambient_dim
    pts = [v + zb for v in A.vertices] + [za + v for v in B.vertices]
    return RationalPolytope(pts, A.ambient_dim + B.ambient_dim)


# -- affine charts -----------------------------------------------------------

class _AffineChart:
    """Lattice coordinates on the affine hull of a polytope.

    With height h(1, x) = 1, the saturated lattice of span{(1, v)} has a basis
    b_0 (height ``step``) and b_1..b_r (height 0).  A point of m*P lies in the
    lattice only if step | m, and then its coordinates (c_1..c_r) range over the
    integer points of m * Q where Q is the polytope in ``chart_points``.
    """

    def __init__(self, step, origin, directions, chart_points, ambient):
        self.step = step
        self.origin = origin          # x-part of b_0 divided by step
        self.directions = directions  # x-parts of b_1..b_r
        self.chart_points = chart_points
        self.ambient = ambient
        self.dim = len(directions)
        self.polytope: RationalPolytope | None = None

    @classmethod
    def build(cls, pts, n):
        H = [_homogenize(p) for p in pts]
        basis = la.saturate(H, n + 1)
        step, U = la.ext_gcd_reduce([b[0] for b in basis])
        new = [[sum(U[i][k] * basis[k][j] for k in range(len(basis)))
                for j in range(n + 1)] for i in range(len(basis))]
        b0, rest = new[0], new[1:]
        origin = tuple(Fraction(x, step) for x in b0[1:])
        directions = [tuple(b[1:]) for b in rest]
        pts_c = []
        if directions:
            A = [list(col) for col in zip(*directions)]
            for p in pts:
                rhs = [Fraction(a) - o for a, o in zip(p, origin)]
                c = la.solve(A, rhs)
                pts_c.append(tuple(c))
        else:
            pts_c = [()] * len(pts)
        return cls(step, origin, directions, pts_c, n)

    def to_chart(self, x):
        rhs = [Fraction(a) - o for a, o in zip(x, self.origin)]
        if not self.directions:
            return () if all(r == 0 for r in rhs) else None
        A = [list(col) for col in zip(*self.directions)]
        c = la.solve(A, rhs)
        if c is None or la.matvec(A, c) != rhs:
            return None
        return tuple(c)

    def from_chart(self, c, m=1):
        return tuple(m * o + sum(ci * d[j] for ci, d in zip(c, self.directions))
                     for j, o in enumerate(self.origin))


def affine_chart(P: RationalPolytope) -> _AffineChart:
    if P._chart is None:
        if P.is_full_dimensional:
            n = P.ambient_dim
            ch = _AffineChart(1, (Fraction(0),) * n,
                              [tuple(int(i == j) for j in range(n)) for i in range(n)],
                              list(P.vertices), n)
            ch.polytope = P
        else:
            ch = _AffineChart.build(list(P.vertices), P.ambient_dim)
            ch.polytope = RationalPolytope(ch.chart_points, ch.dim, _trusted=True)
        P._chart = ch
    return P._chart


# -- enumeration ---------------------------------------------------------------

class _Counter:
    """Counts integer points of m*Q for a full-dimensional rational Q.

    Level k carries the facets of the projection of Q onto the first k+1
    coordinates, which gives exact real bounds for coordinate k once the
    earlier ones are fixed.  Facets are integer rows (a_0..a_k, b) meaning
    sum a_i x_i <= m*b.  Partial sums m*b - a.x are carried down the search
    and the last two coordinates are handled in bulk with numpy.
    """

    def __init__(self, Q: RationalPolytope):
        self.dim = Q.ambient_dim
        self.levels = []
        self.max_coord = max((abs(x) for v in Q.vertices for x in v), default=Fraction(0))
        for k in range(1, self.dim + 1):
            proj = RationalPolytope([v[:k] for v in Q.vertices], k)
            rows = [la.integer_row(list(a) + [b]) for a, b in hull_halfspaces(proj)]
            rows = [r for r in rows if r[k - 1] != 0]
            self.levels.append(rows)
        self._arrays = None

    def __getstate__(self):
        return {"dim": self.dim, "levels": self.levels, "max_coord": self.max_coord}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._arrays = None

    def _magnitude(self, m: int) -> int:
        big = 0
        xmax = m * (int(self.max_coord) + 1)
        for rows in self.levels:
            for r in rows:
                big = max(big, m * abs(r[-1]) + xmax * sum(abs(c) for c in r[:-1]))
        return big

    def _build(self, dtype):
        # rows bounding x_k from above come first, then those bounding it below
        out = []
        for k, rows in enumerate(self.levels):
            rows = sorted(rows, key=lambda r: r[k] < 0)
            nh = sum(1 for r in rows if r[k] > 0)
            A = np.array([r[:-1] for r in rows], dtype=dtype)
            b = np.array([r[-1] for r in rows], dtype=dtype)
            out.append((A, b, nh))
        return out

    def count(self, m: int) -> int:
        if m == 0 or self.dim == 0:
            return 1
        big = self._magnitude(m)
        coef = max((abs(c) for rows in self.levels for r in rows for c in r[:-1]), default=1)
        if big * coef < 2 ** 50:
            # every partial sum and quotient is exact in double precision, and
            # a correctly rounded quotient never crosses an integer here
            return self._run(m, np.float64, _float_bounds)
        if big < 2 ** 62:
            return self._run(m, np.int64, _int_bounds)
        return self._run(m, object, _int_bounds)

    def _run(self, m, dtype, bounds) -> int:
        arrays = self._build(dtype)
        last = self.dim - 1
        widest = max(len(b) for _, b, _ in arrays)
        limit = max(1, _CELL_LIMIT // widest)

        def widths(X, k):
            A, b, nh = arrays[k]
            if k:
                S = X @ A[:, :k].T
                np.subtract(m * b, S, out=S)
            else:
                S = np.tile(m * b, (len(X), 1))
            lo, hi = bounds(S, A[:, k], nh)
            return lo, np.maximum(hi - lo + 1, 0)

        def run(X, k):
            # X holds fixed prefixes x_0..x_{k-1}, one per row
            lo, w = widths(X, k)
            if k == last:
                return int(w.sum())
            n_new = int(w.sum())
            if n_new == 0:
                return 0
            if n_new > limit and len(X) > 1:
                cut = np.cumsum(w)
                out, prev = 0, 0
                while prev < len(X):
                    base = int(cut[prev - 1]) if prev else 0
                    nxt = int(np.searchsorted(cut, base + limit, side="right"))
                    nxt = max(nxt, prev + 1)
                    out += run(X[prev:nxt], k)
                    prev = nxt
                return out
            idx = np.repeat(np.arange(len(X)), w.astype(np.int64))
            starts = np.repeat(np.cumsum(w) - w, w.astype(np.int64))
            col = lo[idx] + (np.arange(n_new) - starts).astype(dtype)
            return run(np.concatenate([X[idx], col[:, None]], axis=1), k + 1)

        return run(np.zeros((1, 0), dtype=dtype), 0)


def _int_bounds(S, a, nh):
    hi = (S[:, :nh] // a[:nh]).min(axis=1)
    lo = (-((-S[:, nh:]) // a[nh:])).max(axis=1)
    return lo, hi


def _float_bounds(S, a, nh):
    np.divide(S, a, out=S)
    return np.ceil(S[:, nh:].max(axis=1)), np.floor(S[:, :nh].min(axis=1))


_CELL_LIMIT = 1 << 22


def _counter_for(P: RationalPolytope):
    if P._counter is None:
        ch = affine_chart(P)
        P._counter = (ch.step, _Counter(ch.polytope))
    return P._counter


def lattice_point_count(P: RationalPolytope, m: int = 1) -> int:
    """|mP ∩ Z^n| for integer m >= 0."""
    if m < 0:
        raise ValueError("dilation factor must be nonnegative")
    if P.is_empty():
        return 1 if m == 0 else 0
    if m == 0:
        return 1
    step, counter = _counter_for(P)
    if m % step:
        return 0
    return counter.count(m)


def _count_task(args):
    counter, m = args
    return counter.count(m)


def default_workers() -> int:
    env = os.environ.get("EQEHR_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(os.cpu_count() or 1, 8))


def lattice_point_counts(P: RationalPolytope, ms: Sequence[int],
                         workers: int | None = None) -> list[int]:
    """Counts for several dilates; dilates are farmed out to processes when workers > 1."""
    workers = default_workers() if workers is None else workers
    if P.is_empty() or workers <= 1 or len(ms) < 2:
        return [lattice_point_count(P, m) for m in ms]
    step, counter = _counter_for(P)
    todo = [m for m in ms if m > 0 and m % step == 0]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        got = dict(zip(todo, ex.map(_count_task, [(counter, m) for m in todo])))
    return [1 if m == 0 else got.get(m, 0) for m in ms]


def enumerate_points(P: RationalPolytope, m: int = 1) -> list[tuple[int, ...]]:
    """All integer points of mP (intended for small instances and tests)."""
    if P.is_empty():
        return [()] if m == 0 else []
    if m == 0:
        return [tuple([0] * P.ambient_dim)]
    ch = affine_chart(P)
    if m % ch.step:
        return []
    if ch.dim == 0:
        pt = ch.from_chart((), m)
        return [tuple(int(x) for x in pt)]
    counter = _counter_for(P)[1]
    out = []

    def rec(k, x):
        lo, hi = None, None
        for row in counter.levels[k]:
            prefix, ak, bb = row[:k], row[k], row[k + 1]
            s = m * bb - sum(c * xi for c, xi in zip(prefix, x))
            if ak > 0:
                v = s // ak
                hi = v if hi is None else min(hi, v)
            else:
                v = -(s // -ak)
                lo = v if lo is None else max(lo, v)
        for v in range(lo, hi + 1):
            if k == counter.dim - 1:
                out.append(tuple(int(t) for t in ch.from_chart(x + [v], m)))
            else:
                rec(k + 1, x + [v])

    rec(0, [])
    return out


# -- affine decomposition of a lattice under a group -----------------------------

@dataclass(frozen=True)
class AffineDecomposition:
    e: tuple[int, ...]
    orthogonal_basis: tuple[tuple[int, ...], ...]
    index: int
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def inner(self, u, v) -> Fraction:
        return sum(Fraction(u[i]) * self.gram[i][j] * v[j]
                   for i in range(len(u)) for j in range(len(v)))

    def height(self, x) -> Fraction:
        """The level i with x in (M_i)_R."""
        return self.index * self.inner(x, self.e) / self.inner(self.e, self.e)

    def in_level(self, x, i: int) -> bool:
        return all(Fraction(t).denominator == 1 for t in x) and self.height(x) == i


def averaged_gram(matrices) -> list[list[Fraction]]:
    n = len(matrices[0])
    G = [[Fraction(0)] * n for _ in range(n)]
    for A in matrices:
        for i in range(n):
            for j in range(n):
                G[i][j] += sum(A[k][i] * A[k][j] for k in range(n))
    return [[x / len(matrices) for x in row] for row in G]


def sublattice_index(basis, matrices, e) -> int:
    """[M:N] for the sublattice M spanned by ``basis`` inside an ambient Z^k.

    The averaged inner product uses the ambient standard form and the
    ambient matrices; e must lie in M and be fixed.
    """
    amb = averaged_gram(matrices)
    B = [list(b) for b in basis]
    gram = la.matmul(la.matmul(B, amb), [list(c) for c in zip(*B)])
    BT = [list(c) for c in zip(*B)]
    ec = la.solve(BT, [Fraction(x) for x in e])
    ge = la.matvec(gram, ec)
    orth = la.integer_kernel([ge], len(B))
    return int(abs(la.det([list(ec)] + [list(b) for b in orth])))


def affine_decomposition(action, e) -> AffineDecomposition:
    """Split Z^n into levels M_i with respect to a group-fixed vector e.

    ``action`` is a FiniteMatrixGroup or an explicit list of all group
    matrices.
    """
    matrices = getattr(action, "elements", action)
    e = tuple(int(x) for x in e)
    if not any(e):
        raise ValueError("e must be nonzero")
    for A in matrices:
        if tuple(la.matvec(A, e)) != e:
            raise ValueError("e is not fixed by the action")
    n = len(e)
    gram = averaged_gram(matrices)
    ge = la.matvec(gram, e)
    orth = tuple(la.integer_kernel([ge], n))
    index = abs(la.det([list(e)] + [list(b) for b in orth]))
    return AffineDecomposition(e, orth, int(index), tuple(map(tuple, gram)))
