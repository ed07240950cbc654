"""Exact integer and rational linear algebra helpers.

Matrices are lists of rows.  Nothing here uses floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list]


def to_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integer_row(vec: Sequence) -> tuple[int, ...]:
    """Clear denominators without dividing out the content."""
    fr = [Fraction(x) for x in vec]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return tuple(int(x * den) for x in fr)


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    A = to_fractions(rows)
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def independent_rows(rows) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivcols: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b, pc in zip(basis, pivcols):
            if v[pc] != 0:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [x * inv for x in v]
        for i, b in enumerate(basis):
            if b[pc] != 0:
                f = b[pc]
                basis[i] = [x - f * y for x, y in zip(b, v)]
        basis.append(v)
        pivcols.append(pc)
        chosen.append(idx)
    return chosen


def solve(A, b) -> list[Fraction] | None:
    """Solve A x = b exactly; None if inconsistent.  Free variables set to 0."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    ncols = len(A[0]) if A else 0
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return x


def inverse(A) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(A) -> Fraction:
    A = to_fractions(A)
    n = len(A)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        result *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def matmul(A, B) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# -- Hermite normal form -----------------------------------------------

def hnf_with_transform(rows: Sequence[Sequence[int]]):
    """Row-style HNF.  Returns (H, U) with U unimodular and U*A = H.

    H has its nonzero rows first, positive pivots, and entries above each
    pivot reduced into [0, pivot).
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid down column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf(rows) -> list[tuple[int, ...]]:
    if not rows:
        return []
    H, _ = hnf_with_transform(rows)
    return [tuple(r) for r in H if any(r)]


def integer_kernel(A, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis (canonical HNF) of {x in Z^n : A x = 0}; A may be rational."""
    rows = [integer_row(r) for r in A]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    At = [list(col) for col in zip(*rows)]  # n x k
    H, U = hnf_with_transform(At)
    kernel = [U[i] for i in range(n) if not any(H[i])]
    return hnf(kernel)


def saturate(vectors, ambient: int) -> list[tuple[int, ...]]:
    """Basis of span_Q(vectors) intersected with Z^ambient, in HNF."""
    vecs = [integer_row(v) for v in vectors if any(Fraction(x) != 0 for x in v)]
    if not vecs:
        return []
    complement = integer_kernel(vecs, ambient)
    if not complement:
        return [tuple(int(i == j) for j in range(ambient)) for i in range(ambient)]
    return integer_kernel(complement, ambient)


def ext_gcd_reduce(heights: Sequence[int]):
    """Unimodular U with U * heights = (g, 0, ..., 0), g >= 0."""
    H, U = hnf_with_transform([[h] for h in heights])
    return H[0][0], U


# -- double description --------------------------------------------------

def extreme_rays(M: Sequence[Sequence[int]]):
    """Extreme rays of the pointed cone {z : M z >= 0}.

    Returns a list of (ray, zero_mask) where ray is a primitive integer
    vector and bit i of zero_mask is set iff row i of M is tight on it.
    Raises ValueError when the cone is not pointed (rank M < dim).
    """
    rows = [integer_row(r) for r in M]
    k = len(rows[0])
    basis_idx = independent_rows(rows)
    if len(basis_idx) < k:
        raise ValueError("cone is not pointed")
    B = [rows[i] for i in basis_idx]
    Binv = inverse(B)
    rays: list[tuple[int, ...]] = []
    for j in range(k):
        rays.append(primitive([Binv[i][j] for i in range(k)]))
    nrows = len(rows)

    def dot(a, r):
        return sum(x * y for x, y in zip(a, r))

    masks = []
    for j in range(k):
        m = 0
        for pos, i in enumerate(basis_idx):
            if pos != j:
                m |= 1 << i
        masks.append(m)
    processed = 0
    for i in basis_idx:
        processed |= 1 << i

    for i in range(nrows):
        if processed >> i & 1:
            continue
        a = rows[i]
        vals = [dot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos] + [rays[j] for j in zer]
        new_masks = [masks[j] for j in pos] + [masks[j] | (1 << i) for j in zer]
        if neg and pos:
            allmasks = masks
            for p in pos:
                for q in neg:
                    common = masks[p] & masks[q]
                    if bin(common).count("1") < k - 2:
                        continue
                    adjacent = True
                    for t, mt in enumerate(allmasks):
                        if t != p and t != q and (common & mt) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    r = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                    new_rays.append(primitive(r))
                    new_masks.append(common | (1 << i))
        rays, masks = new_rays, new_masks
        processed |= 1 << i
    return list(zip(rays, masks))
