"""Polytope families with their symmetry groups, and closed-form oracles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, RationalGenFunction, binom, one_minus_t_pow, rf_reduce
from .groups import (CharacterTable, FiniteMatrixGroup, Matrix, as_matrix, bind_table,
                     char_table_cyclic, char_table_dihedral, char_table_product,
                     group_closure, mat_identity, mat_mul, mat_pow)
from .lattice import RationalPolytope, free_sum


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


# -- cycle graphs -------------------------------------------------------------

@dataclass(frozen=True)
class CycleAction:
    d: int
    labels: tuple[str, ...]          # coordinate i is the vertex labels[i]
    edges: tuple[tuple[int, int], ...]
    r: Matrix
    s: Matrix

    def index(self, label: str) -> int:
        return self.labels.index(label)


def _perm_matrix(perm: list[int]) -> Matrix:
    n = len(perm)
    M = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        M[j][i] = 1
    return as_matrix(M)


def cycle_action(d: int) -> CycleAction:
    """Labelled cycle C_d with reflection s (fewest fixed vertices) and rotation r.

    Two paths v_0..v_L and w_0..w_L with L = ceil((d-2)/2); s swaps v_i and w_i,
    v_0 = w_0 when d is odd, and r is the rotation sending w_0 to w_1.
    """
    if d < 3:
        raise ValueError("cycle graphs need d >= 3")
    L = (d - 1) // 2
    odd = d % 2 == 1
    labels = [f"v{i}" for i in range(L + 1)] + [f"w{i}" for i in range(0 if not odd else 1, L + 1)]
    idx = {lab: i for i, lab in enumerate(labels)}
    if odd:
        idx["w0"] = idx["v0"]
    edges = set()
    for i in range(L):
        edges.add(frozenset((idx[f"v{i}"], idx[f"v{i + 1}"])))
        edges.add(frozenset((idx[f"w{i}"], idx[f"w{i + 1}"])))
    edges.add(frozenset((idx[f"v{L}"], idx[f"w{L}"])))
    if not odd:
        edges.add(frozenset((idx["v0"], idx["w0"])))
    edge_list = tuple(sorted(tuple(sorted(e)) for e in edges))
    assert len(edge_list) == d

    # walk the cycle starting w0 -> w1; r advances one step along the walk
    nbrs = {i: [] for i in range(d)}
    for a, b in edge_list:
        nbrs[a].append(b)
        nbrs[b].append(a)
    walk = [idx["w0"], idx["w1"]]
    while len(walk) < d:
        cur, prev = walk[-1], walk[-2]
        walk.append(next(x for x in nbrs[cur] if x != prev))
    rperm = [0] * d
    for a, b in zip(walk, walk[1:] + walk[:1]):
        rperm[a] = b
    sperm = list(range(d))
    for i in range(L + 1):
        a, b = idx[f"v{i}"], idx[f"w{i}"]
        sperm[a], sperm[b] = b, a
    act = CycleAction(d, tuple(labels), edge_list, _perm_matrix(rperm), _perm_matrix(sperm))
    I = mat_identity(d)
    if not (mat_mul(act.s, act.s) == I and mat_pow(act.r, d) == I
            and mat_pow(mat_mul(act.s, act.r), 2) == I):
        raise AssertionError("dihedral relations fail for the cycle labelling")
    return act


def symmetric_edge_polytope(edges, n: int) -> RationalPolytope:
    edges = list(edges)
    if not edges:
        raise ValueError("graph has no edges")
    pts = []
    for v, w in edges:
        e = [0] * n
        e[v], e[w] = 1, -1
        pts.append(tuple(e))
        pts.append(tuple(-x for x in e))
    return RationalPolytope(pts, n)


def cycle_polytope(d: int) -> RationalPolytope:
    act = cycle_action(d)
    return symmetric_edge_polytope(act.edges, d)


def cycle_dihedral_group(d: int) -> tuple[FiniteMatrixGroup, CharacterTable]:
    act = cycle_action(d)
    G = group_closure([act.r, act.s])
    T = bind_table(char_table_dihedral(d), G, {"r": act.r, "s": act.s})
    return G, T


def cycle_reflection_group(d: int, which: str = "s") -> tuple[FiniteMatrixGroup, CharacterTable]:
    act = cycle_action(d)
    g = act.s if which == "s" else mat_mul(act.s, act.r)
    G = group_closure([g])
    return G, bind_table(char_table_cyclic(2), G, {"g": g})


# -- rational cross-polytopes ----------------------------------------------------

def cross_polytope(k: int, d: int) -> RationalPolytope:
    """Conv{±e_1, ..., ±e_{d-1}, ±(k/2) e_d} for odd k."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    if d < 2:
        raise ValueError("d must be at least 2")
    pts = []
    for i in range(d):
        scale = Fraction(k, 2) if i == d - 1 else Fraction(1)
        for sign in (1, -1):
            v = [Fraction(0)] * d
            v[i] = sign * scale
            pts.append(tuple(v))
    return RationalPolytope(pts, d)


def standard_cross_polytope(n: int) -> RationalPolytope:
    pts = []
    for i in range(n):
        for sign in (1, -1):
            v = [0] * n
            v[i] = sign
            pts.append(tuple(v))
    return RationalPolytope(pts, n)


def segment(a, b) -> RationalPolytope:
    return RationalPolytope([(Fraction(a),), (Fraction(b),)], 1)


def coordinate_reflection(i: int, d: int) -> Matrix:
    """sigma_i: e_i -> -e_i, other basis vectors fixed (i is 1-based)."""
    return as_matrix([[(-1 if r == i - 1 else 1) if r == c else 0 for c in range(d)]
                      for r in range(d)])


def reflection_group(i: int, d: int) -> tuple[FiniteMatrixGroup, CharacterTable]:
    g = coordinate_reflection(i, d)
    G = group_closure([g])
    return G, bind_table(char_table_cyclic(2), G, {"g": g})


def all_reflections_group(d: int) -> tuple[FiniteMatrixGroup, CharacterTable]:
    gens = [coordinate_reflection(i, d) for i in range(1, d + 1)]
    G = group_closure(gens)
    T = char_table_product(*[char_table_cyclic(2) for _ in range(d)])
    return G, bind_table(T, G, {f"{i}.g": g for i, g in enumerate(gens)})


def sigma_d_character_label(d: int) -> str:
    """Label, in the product table, of the character that is -1 only on sigma_d."""
    return "*".join(["chi1"] * (d - 1) + ["chi2"])


# -- further instances --------------------------------------------------------------

def example_simplex() -> tuple[RationalPolytope, FiniteMatrixGroup, CharacterTable]:
    """Conv{e_1..e_4} with sigma = (1,2)(3,4) permuting coordinates."""
    P = RationalPolytope([tuple(int(i == j) for j in range(4)) for i in range(4)])
    sigma = _perm_matrix([1, 0, 3, 2])
    G = group_closure([sigma])
    return P, G, bind_table(char_table_cyclic(2), G, {"g": sigma})


def example_affine_simplex() -> tuple[RationalPolytope, FiniteMatrixGroup, CharacterTable]:
    """Conv{0, e_1, e_2, e_3} with sigma acting up to the translation e_1."""
    P = RationalPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    sigma = as_matrix([[-1, -1, -1], [0, 0, 1], [0, 1, 0]])
    G = group_closure([sigma])
    return P, G, bind_table(char_table_cyclic(2), G, {"g": sigma})


def q_polytope(d: int) -> RationalPolytope:
    """Conv{e1, e2, e3, -e1-e2-e3} free-summed with d-3 copies of [-1, 1]."""
    S = RationalPolytope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])
    Q = S
    for _ in range(d - 3):
        Q = free_sum(Q, segment(-1, 1))
    return Q


# -- closed forms -----------------------------------------------------------------

def _ohsugi_sum(d: int, j: int) -> int:
    return (-1) ** j * sum((-2) ** i * binom(d, i) * binom(d - 1 - i, j - i)
                           for i in range(j + 1))


def ohsugi_h(d: int) -> Poly:
    """h*-polynomial of the symmetric edge polytope of C_d."""
    if d < 3:
        raise ValueError("d must be at least 3")
    # the alternating sum is only valid up to (d-1)/2; at j = d/2 (d even) it
    # overshoots, so the upper half comes from palindromy
    h = [0] * d
    for j in range((d - 1) // 2 + 1):
        h[j] = _ohsugi_sum(d, j)
    for j in range((d - 1) // 2 + 1, d):
        h[j] = h[d - 1 - j]
    if d % 2 == 1 and h[(d - 1) // 2] != 2 ** (d - 1):
        raise ArithmeticError("middle coefficient differs from 2^(d-1)")
    if d >= 4:
        prev = ohsugi_h(d - 1)
        for j in range(1, d // 2 + 1):
            if d % 2 == 1 and j == (d - 1) // 2:
                continue
            if h[j] != prev[j - 1] + prev[j]:
                raise ArithmeticError(f"recurrence fails at d={d}, j={j}")
    return Poly(h)


def thm37_g(d: int) -> Poly:
    """(1+t)^b (1+t^2)^l with l = floor((d-1)/2), b = d-1-2l."""
    ell = (d - 1) // 2
    b = d - 1 - 2 * ell
    return Poly([1, 1]) ** b * Poly([1, 0, 1]) ** ell


def _as_nonneg_int(q: Fraction, what: str) -> int:
    if q.denominator != 1 or q < 0:
        raise ArithmeticError(f"{what} = {q} is not a nonnegative integer")
    return int(q)


def thm33_hstar(p: int) -> list[tuple[int, int, int]]:
    """Multiplicities (psi1, psi2, chi) of each H*_j for the dihedral action on P_p.

    chi is the sum of all two-dimensional irreducibles; each of them occurs
    with the stated chi multiplicity.
    """
    if not _is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    h = ohsugi_h(p)
    out = []
    for j in range(p):
        hj = Fraction(h[j])
        if j % 2 == 0:
            g = binom((p - 1) // 2, j // 2)
            a = (hj - 1 + p * (g + 1)) / (2 * p)
            b = (hj - 1 - p * (g - 1)) / (2 * p)
        else:
            a = b = (p + hj - 1) / (2 * p)
        c = (2 * hj - 2) / (2 * p)
        out.append(tuple(_as_nonneg_int(x, f"H*_{j}") for x in (a, b, c)))
    return out


def thm33_full_table(p: int) -> list[tuple[int, ...]]:
    """thm33_hstar spread over (psi1, psi2, chi_1, ..., chi_{(p-1)/2})."""
    return [(a, b) + (c,) * ((p - 1) // 2) for a, b, c in thm33_hstar(p)]


def thm37_hstar(d: int) -> list[tuple[int, int]]:
    """Multiplicities (chi1, chi2) of H*_j for P_d under {1, s}."""
    if d < 3:
        raise ValueError("d must be at least 3")
    h, g = ohsugi_h(d), thm37_g(d)
    out = []
    for j in range(d):
        out.append((_as_nonneg_int((h[j] + g[j]) / 2, f"H*_{j}[chi1]"),
                    _as_nonneg_int((h[j] - g[j]) / 2, f"H*_{j}[chi2]")))
    return out


def thm44_coeffs(k: int, d: int) -> tuple[list[int], list[int]]:
    """(a_j, b_j), j = 0..d: multiplicities of chi1 and chi2 in H*_j."""
    if k % 2 == 0 or d < 2:
        raise ValueError("need k odd and d >= 2")
    a, b = [], []
    for j in range(d + 1):
        aj = binom(d - 2, j) + Fraction(k + 1, 2) * binom(d - 1, j - 1)
        bj = Fraction(k - 1, 2) * binom(d - 1, j - 1) - binom(d - 2, j - 1)
        a.append(int(aj))
        b.append(int(bj))
    return a, b


def htilde(k: int, d: int) -> Poly:
    return Poly([1, k - 1, k]) * Poly([1, 1]) ** (d - 2)


def prop32_series(ell: int) -> RationalGenFunction:
    return rf_reduce(Poly([1, 0, 1]) ** ell, Poly([1, -1]) * Poly([1, 0, -1]) ** ell)


def prop41_series(k: int, d: int) -> RationalGenFunction:
    return rf_reduce(htilde(k, d), one_minus_t_pow(1, d + 1))


@dataclass(frozen=True)
class LemmaRow:
    j: int
    h: int
    g: int
    bound: int

    @property
    def margin(self) -> int:
        return self.h - self.bound


def lemma34_check(d: int) -> list[LemmaRow]:
    """h_j >= d (g_j - 1) + 1 for even j <= (d-1)/2, d odd."""
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and at least 3")
    h = ohsugi_h(d)
    rows = []
    for j in range(0, (d - 1) // 2 + 1, 2):
        g = binom((d - 1) // 2, j // 2)
        row = LemmaRow(j, int(h[j]), g, d * (g - 1) + 1)
        if row.margin < 0:
            raise ArithmeticError(f"inequality violated at d={d}, j={j}")
        rows.append(row)
    return rows


def binomial_lower_bound_check(d: int) -> list[tuple[int, int, int]]:
    """(l, h_l, C(d-1, l)) with h_l >= C(d-1, l) for every l."""
    h = ohsugi_h(d)
    rows = [(l, int(h[l]), binom(d - 1, l)) for l in range(d)]
    for l, hl, c in rows:
        if hl < c:
            raise ArithmeticError(f"h_{l}^({d}) = {hl} < C({d - 1},{l}) = {c}")
    return rows


# -- selectors ------------------------------------------------------------------------

def build_family(sel: dict):
    """Resolve a family selector to (polytope, group, table).

    {"family": "sep-cycle", "d": 5, "group": "dihedral" | "s-only" | "sr-only"}
    {"family": "cross", "k": 3, "d": 4, "group": "sigma-d" | "all-reflections" | {"axis": i}}
    {"family": "simplex-ex22"} / {"family": "simplex-affine"} / {"family": "q", "d": 4}
    """
    fam = sel.get("family")
    if fam == "sep-cycle":
        d = int(sel["d"])
        group = sel.get("group", "dihedral")
        P = cycle_polytope(d)
        if group == "dihedral":
            G, T = cycle_dihedral_group(d)
        elif group == "s-only":
            G, T = cycle_reflection_group(d, "s")
        elif group == "sr-only":
            G, T = cycle_reflection_group(d, "sr")
        elif group in (None, "trivial"):
            G, T = trivial_group(d)
        else:
            raise ValueError(f"unknown group {group!r} for sep-cycle")
        return P, G, T
    if fam == "cross":
        k, d = int(sel.get("k", 1)), int(sel["d"])
        group = sel.get("group", "sigma-d")
        dil = int(sel.get("dilate", 1))
        P = cross_polytope(k, d)
        if dil != 1:
            P = P.dilate(dil)
        if group == "sigma-d":
            G, T = reflection_group(d, d)
        elif group == "all-reflections":
            G, T = all_reflections_group(d)
        elif isinstance(group, dict) and "axis" in group:
            G, T = reflection_group(int(group["axis"]), d)
        elif group in (None, "trivial"):
            G, T = trivial_group(d)
        else:
            raise ValueError(f"unknown group {group!r} for cross")
        return P, G, T
    if fam == "simplex-ex22":
        return example_simplex()
    if fam == "simplex-affine":
        return example_affine_simplex()
    if fam == "q":
        d = int(sel["d"])
        P = q_polytope(d)
        G, T = trivial_group(d)
        return P, G, T
    raise ValueError(f"unknown family {fam!r}")


def trivial_group(n: int) -> tuple[FiniteMatrixGroup, CharacterTable]:
    I = mat_identity(n)
    G = FiniteMatrixGroup([I], [I])
    return G, bind_table(char_table_cyclic(1), G, {"g": I})
