"""Finite matrix groups, exact character tables and virtual characters."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Callable, Hashable, Sequence

from . import _intlinalg as la
from .algebra import CycloNum, NonRational, Poly, cyclo_to_rational

Matrix = tuple[tuple[int, ...], ...]


class NonIntegral(ArithmeticError):
    """A class function is not an integer combination of irreducibles."""


class GroupTooLarge(RuntimeError):
    pass


def as_matrix(A) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in A)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_pow(A: Matrix, k: int) -> Matrix:
    out = mat_identity(len(A))
    for _ in range(k):
        out = mat_mul(out, A)
    return out


class FiniteMatrixGroup:
    """A finite group of integer matrices, stored as an explicit element list.

    ``elements[0]`` is the identity.
    """

    def __init__(self, elements: Sequence[Matrix], generators: Sequence[Matrix] = ()):
        self.elements: list[Matrix] = [as_matrix(g) for g in elements]
        self.ambient_dim = len(self.elements[0])
        if self.elements[0] != mat_identity(self.ambient_dim):
            raise ValueError("elements[0] must be the identity")
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.generators = [as_matrix(g) for g in generators]
        self.class_labels: list[str] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def product_table(self) -> list[list[int]]:
        idx = self.index
        table = []
        for g in self.elements:
            row = []
            for h in self.elements:
                gh = mat_mul(g, h)
                if gh not in idx:
                    raise ValueError("element list is not closed under products")
                row.append(idx[gh])
            table.append(row)
        return table

    @cached_property
    def inverse_table(self) -> list[int]:
        out = []
        for g in self.elements:
            inv = as_matrix(la.inverse(g))
            out.append(self.index[inv])
        return out

    def mul(self, i: int, j: int) -> int:
        return self.product_table[i][j]

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes as sorted index lists, ordered by first element."""
        seen: set[int] = set()
        out = []
        pt, inv = self.product_table, self.inverse_table
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({pt[pt[g][x]][inv[g]] for g in range(self.order)})
            seen.update(cls)
            out.append(cls)
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, members in enumerate(self.classes):
            for i in members:
                out[i] = c
        return out

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def exponent(self) -> int:
        out = 1
        ident = self.elements[0]
        for g in self.elements:
            k, h = 1, g
            while h != ident:
                h = mat_mul(h, g)
                k += 1
            out = lcm(out, k)
        return out


def group_closure(generators, bound: int = 20000) -> FiniteMatrixGroup:
    gens = [as_matrix(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    for g in gens:
        if abs(la.det(g)) != 1:
            raise ValueError("generators must be invertible over Z")
    ident = mat_identity(n)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
                if len(elements) > bound:
                    raise GroupTooLarge(f"closure exceeds {bound} elements")
    return FiniteMatrixGroup(elements, gens)


# -- abstract presets --------------------------------------------------------

@dataclass(frozen=True)
class AbstractGroup:
    """A small group given by its elements and a multiplication rule."""
    name: str
    elements: tuple[Hashable, ...]
    mul: Callable
    identity: Hashable
    generator_names: tuple[str, ...]
    # maps (element, {generator name: matrix}) to the image matrix
    image: Callable
    label: Callable

    def conjugacy_classes(self) -> list[list[Hashable]]:
        inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) == self.identity:
                    inv[a] = b
                    break
        seen = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            cls = []
            for g in self.elements:
                y = self.mul(self.mul(g, x), inv[g])
                if y not in cls:
                    cls.append(y)
            cls.sort(key=self.elements.index)
            seen.update(cls)
            out.append(cls)
        return out


def cyclic_group(n: int) -> AbstractGroup:
    def image(k, gens):
        return mat_pow(gens["g"], k)

    return AbstractGroup(f"C{n}", tuple(range(n)), lambda a, b: (a + b) % n, 0, ("g",),
                         image, lambda k: "1" if k == 0 else ("g" if k == 1 else f"g^{k}"))


def dihedral_group(d: int) -> AbstractGroup:
    """D_2d with elements (f, k) meaning s^f r^k."""
    def mul(a, b):
        f1, k1 = a
        f2, k2 = b
        if f2 == 0:
            return ((f1) % 2, (k1 + k2) % d)
        return ((f1 + 1) % 2, (k2 - k1) % d)

    def image(x, gens):
        f, k = x
        out = mat_pow(gens["r"], k)
        return mat_mul(gens["s"], out) if f else out

    def label(x):
        f, k = x
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        if f:
            return "s" + (" " + r if r else "")
        return r or "1"

    elements = tuple((f, k) for f in (0, 1) for k in range(d))
    return AbstractGroup(f"D{2 * d}", elements, mul, (0, 0), ("r", "s"), image, label)


def product_group(*factors: AbstractGroup) -> AbstractGroup:
    import itertools

    elements = tuple(itertools.product(*(f.elements for f in factors)))

    def mul(a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(factors, a, b))

    names = tuple(f"{i}.{g}" for i, f in enumerate(factors) for g in f.generator_names)

    def image(x, gens):
        out = None
        for i, (f, xi) in enumerate(zip(factors, x)):
            sub = {g: gens[f"{i}.{g}"] for g in f.generator_names}
            m = f.image(xi, sub)
            out = m if out is None else mat_mul(out, m)
        return out

    def label(x):
        return "(" + ", ".join(f.label(xi) for f, xi in zip(factors, x)) + ")"

    name = " x ".join(f.name for f in factors)
    return AbstractGroup(name, elements, mul, tuple(f.identity for f in factors), names,
                         image, label)


# -- character tables ----------------------------------------------------------

class CharacterTable:
    """Irreducible characters of a group, indexed by its conjugacy classes.

    ``rows[i][c]`` is a CycloNum; the first row is the trivial character.
    """

    def __init__(self, order: int, class_sizes: Sequence[int], rows, labels=None,
                 class_labels=None, exponent: int | None = None, group=None):
        self.group_order = order
        self.class_sizes = list(class_sizes)
        self.exponent = exponent or lcm(1, *(x.order for r in rows for x in r))
        self.rows = [[x.lift(lcm(x.order, self.exponent)) for x in r] for r in rows]
        self.labels = list(labels) if labels else [f"chi{i + 1}" for i in range(len(rows))]
        self.class_labels = list(class_labels) if class_labels else None
        self.group = group
        self.abstract = None

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def degrees(self) -> list[int]:
        return [int(cyclo_to_rational(r[0])) for r in self.rows]

    def inner(self, f, g) -> CycloNum:
        """<f, g> = (1/|G|) sum over classes of size * f * conj(g)."""
        acc = CycloNum.rational(0, self.exponent)
        for size, a, b in zip(self.class_sizes, f, g):
            a = a if isinstance(a, CycloNum) else CycloNum.rational(a, self.exponent)
            b = b if isinstance(b, CycloNum) else CycloNum.rational(b, self.exponent)
            acc = acc + a * b.conj() * size
        return acc * Fraction(1, self.group_order)

    def check_orthogonality(self) -> bool:
        k = len(self.rows)
        for i in range(k):
            for j in range(k):
                if self.inner(self.rows[i], self.rows[j]) != int(i == j):
                    return False
        # column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = delta |C_G(c)|
        ncls = len(self.class_sizes)
        for c in range(ncls):
            for c2 in range(ncls):
                s = sum((self.rows[i][c] * self.rows[i][c2].conj() for i in range(k)),
                        CycloNum.rational(0, self.exponent))
                want = Fraction(self.group_order, self.class_sizes[c]) if c == c2 else 0
                if s != want:
                    return False
        return sum(d * d for d in self.degrees) == self.group_order

    def to_json(self) -> dict:
        from .io import cyclo_to_json
        return {
            "labels": self.labels,
            "class_labels": self.class_labels,
            "class_sizes": self.class_sizes,
            "rows": [[cyclo_to_json(x) for x in r] for r in self.rows],
        }


def _abstract_table(G: AbstractGroup, exponent: int, char: Callable, labels) -> CharacterTable:
    classes = G.conjugacy_classes()
    reps = [c[0] for c in classes]
    rows = [[char(j, x) for x in reps] for j in range(len(labels))]
    T = CharacterTable(len(G.elements), [len(c) for c in classes], rows, labels,
                       [G.label(x) for x in reps], exponent)
    T.abstract = (G, classes)
    return T


def char_table_cyclic(n: int) -> CharacterTable:
    G = cyclic_group(n)
    return _abstract_table(G, n, lambda j, k: CycloNum.zeta(n, j * k),
                           [f"chi{j + 1}" for j in range(n)])


def char_table_dihedral(d: int) -> CharacterTable:
    G = dihedral_group(d)
    n = max(d, 1)
    one = CycloNum.rational(1, n)
    labels = ["psi1", "psi2"]
    linear = [lambda f, k: one, lambda f, k: one * (-1) ** f]
    if d % 2 == 0:
        labels += ["psi3", "psi4"]
        linear += [lambda f, k: one * (-1) ** k, lambda f, k: one * (-1) ** (k + f)]
    nchi = (d - 1) // 2
    labels += [f"chi{j}" for j in range(1, nchi + 1)]

    def char(i, x):
        f, k = x
        if i < len(linear):
            return linear[i](f, k)
        j = i - len(linear) + 1
        if f:
            return CycloNum.rational(0, n)
        return CycloNum.zeta(n, j * k) + CycloNum.zeta(n, -j * k)

    return _abstract_table(G, n, char, labels)


def char_table_product(*tables: CharacterTable) -> CharacterTable:
    import itertools

    groups = [T.abstract[0] for T in tables]
    G = product_group(*groups)
    exponent = lcm(*(T.exponent for T in tables))
    # class index lookup per factor
    lookups = []
    for T in tables:
        _, classes = T.abstract
        lookups.append({x: c for c, members in enumerate(classes) for x in members})
    combos = list(itertools.product(*(range(len(T.rows)) for T in tables)))
    labels = ["*".join(T.labels[i] for T, i in zip(tables, combo)) for combo in combos]

    def char(j, x):
        combo = combos[j]
        out = CycloNum.rational(1, exponent)
        for T, i, lk, xi in zip(tables, combo, lookups, x):
            out = out * T.rows[i][lk[xi]]
        return out

    return _abstract_table(G, exponent, char, labels)


def bind_table(table: CharacterTable, group: FiniteMatrixGroup,
               generator_images: dict) -> CharacterTable:
    """Transport a preset table onto a concrete matrix group.

    ``generator_images`` names the matrix playing each abstract generator.
    The induced map must be a group isomorphism; this subsumes the defining
    relations of the preset.
    """
    if table.abstract is None:
        raise ValueError("only preset tables can be bound")
    G, classes = table.abstract
    gens = {k: as_matrix(v) for k, v in generator_images.items()}
    missing = set(G.generator_names) - set(gens)
    if missing:
        raise ValueError(f"missing generator images: {sorted(missing)}")
    img = {}
    for x in G.elements:
        m = G.image(x, gens)
        if m not in group.index:
            raise ValueError(f"image of {G.label(x)} is not in the group")
        img[x] = group.index[m]
    if len(set(img.values())) != len(G.elements) or len(G.elements) != group.order:
        raise ValueError("generator images do not give a bijection onto the group")
    for a in G.elements:
        for b in G.elements:
            if img[G.mul(a, b)] != group.mul(img[a], img[b]):
                raise ValueError("generator images violate the defining relations")
    # reorder columns to the matrix group's own class order
    cls_of = group.class_of
    col_for = {}
    for c, members in enumerate(classes):
        gc = cls_of[img[members[0]]]
        if sorted(img[x] for x in members) != group.classes[gc]:
            raise ValueError("class structure mismatch")
        col_for[gc] = c
    order = [col_for[gc] for gc in range(len(group.classes))]
    rows = [[r[c] for c in order] for r in table.rows]
    class_labels = [table.class_labels[c] for c in order]
    out = CharacterTable(group.order, group.class_sizes, rows, table.labels,
                         class_labels, table.exponent, group)
    group.class_labels = class_labels
    return out


def user_table(group: FiniteMatrixGroup, class_reps: Sequence, rows, labels=None,
               class_labels=None) -> CharacterTable:
    """A user-supplied table; rows[i][j] is chi_i at class_reps[j] (a matrix)."""
    cols = []
    for rep in class_reps:
        m = as_matrix(rep)
        if m not in group.index:
            raise ValueError("class representative not in group")
        cols.append(group.class_of[group.index[m]])
    if sorted(cols) != list(range(len(group.classes))):
        raise ValueError("class representatives must hit every class exactly once")
    where = {c: j for j, c in enumerate(cols)}
    vals = [[x if isinstance(x, CycloNum) else CycloNum.rational(Fraction(x)) for x in r]
            for r in rows]
    ordered = [[r[where[c]] for c in range(len(cols))] for r in vals]
    cl = [class_labels[where[c]] for c in range(len(cols))] if class_labels else None
    T = CharacterTable(group.order, group.class_sizes, ordered, labels, cl, group=group)
    if not T.check_orthogonality():
        raise ValueError("user character table fails orthogonality")
    if any(x != 1 for x in T.rows[0]):
        raise ValueError("first row must be the trivial character")
    return T


# -- class functions -------------------------------------------------------------

@dataclass(frozen=True)
class ClassFunction:
    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> "ClassFunction":
        return cls(tuple(Fraction(v) for v in values))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(tuple(a - b for a, b in zip(self.values, other.values)))

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class VirtualCharacter:
    multiplicities: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __str__(self) -> str:
        labels = self.labels or tuple(f"chi{i + 1}" for i in range(len(self.multiplicities)))
        terms = []
        for m, lab in zip(self.multiplicities, labels):
            if m == 0:
                continue
            terms.append(lab if m == 1 else (f"-{lab}" if m == -1 else f"{m}*{lab}"))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def reconstruct(v: VirtualCharacter, T: CharacterTable) -> list[CycloNum]:
    out = []
    for c in range(len(T.class_sizes)):
        acc = CycloNum.rational(0, T.exponent)
        for m, row in zip(v.multiplicities, T.rows):
            acc = acc + row[c] * m
        out.append(acc)
    return out


def decompose(f, T: CharacterTable) -> VirtualCharacter:
    values = f.values if isinstance(f, ClassFunction) else tuple(f)
    if len(values) != len(T.class_sizes):
        raise NonRational("class function does not match the table's classes")
    mults = []
    for row in T.rows:
        q = cyclo_to_rational(T.inner(values, row))
        if q.denominator != 1:
            raise NonIntegral(f"multiplicity {q} of {T.labels[len(mults)]} is not an integer")
        mults.append(int(q))
    v = VirtualCharacter(tuple(mults), tuple(T.labels))
    want = [x if isinstance(x, CycloNum) else CycloNum.rational(x, T.exponent) for x in values]
    if reconstruct(v, T) != want:
        raise NonIntegral("reconstruction does not reproduce the class function")
    return v


def is_effective(v: VirtualCharacter) -> bool:
    return all(m >= 0 for m in v.multiplicities)


def det_factor(A) -> Poly:
    """det(I - t A) as an integer polynomial, by exact interpolation."""
    n = len(A)
    ts = list(range(n + 1))
    vals = [la.det([[int(i == j) - t * A[i][j] for j in range(n)] for i in range(n)])
            for t in ts]
    from .ehrhart import _interpolate
    return Poly(_interpolate(ts, vals))
