"""Concrete element arithmetic for the reflection groups A_n, C_n, D_n, I_2(m)
and H_3, plus Coxeter presentation data for every irreducible family.

Composition convention, used by every module in this package: ``compose(a, b)``
applies ``a`` first and then ``b``.  Element classes implement it as
``a.then(b)``; nothing else multiplies group elements directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

FAMILIES = ("A", "C", "D", "I2", "H3", "H4", "F4", "E6", "E7", "E8")

_MIN_PARAM = {"A": 1, "C": 2, "D": 4, "I2": 2}
_EXCEPTIONAL_ORDERS = {
    "H3": 120,
    "H4": 14400,
    "F4": 1152,
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
}

DEFAULT_ENUMERATION_BUDGET = 100_000


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


class UnsupportedRepresentationError(ValueError):
    """The family has no concrete representation (H_4, F_4, E_6, E_7, E_8)."""


@dataclass(frozen=True)
class GroupId:
    """Symbolic name of an irreducible finite reflection group.

    ``param`` is the rank for A/C/D, the edge label m for I2, and None for
    the exceptional families.
    """

    family: str
    param: int | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        low = _MIN_PARAM.get(self.family)
        if low is not None:
            if self.param is None or self.param < low:
                raise ValueError(f"family {self.family} requires param >= {low}, got {self.param}")
        elif self.param is not None:
            raise ValueError(f"family {self.family} takes no parameter, got {self.param}")

    @classmethod
    def parse(cls, spec: str) -> "GroupId":
        """Parse a ``FAMILY[:param]`` spec such as ``C:3``, ``I2:7`` or ``E8``."""
        head, sep, tail = spec.partition(":")
        if sep:
            try:
                param = int(tail)
            except ValueError:
                raise ValueError(f"bad group spec {spec!r}: param must be an integer") from None
            return cls(head, param)
        return cls(head)

    def spec(self) -> str:
        return self.family if self.param is None else f"{self.family}:{self.param}"

    def label(self) -> str:
        if self.family == "I2":
            return f"I2({self.param})"
        return self.family if self.param is None else f"{self.family}{self.param}"

    def order(self) -> int:
        n = self.param
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "C":
            return (1 << n) * math.factorial(n)
        if self.family == "D":
            return (1 << (n - 1)) * math.factorial(n)
        if self.family == "I2":
            return 2 * n
        return _EXCEPTIONAL_ORDERS[self.family]

    def __str__(self) -> str:
        return self.label()


# ---------------------------------------------------------------------------
# element types


@dataclass(frozen=True, slots=True)
class SignedPerm:
    """Hyperoctahedral element: basis vector e_i maps to (-1)**flips[i] * e_images[i].

    Coordinates are 0-based.  ``images`` is a bijection of range(n); ``flips``
    holds one bit per source coordinate.
    """

    images: tuple[int, ...]
    flips: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if len(self.flips) != n:
            raise ValueError("images and flips must have equal length")
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"images {self.images} is not a bijection of 0..{n - 1}")
        if any(f not in (0, 1) for f in self.flips):
            raise ValueError("flips must be 0/1 bits")

    @property
    def rank(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (0,) * n)

    @classmethod
    def coordinate_flip(cls, n: int, i: int) -> "SignedPerm":
        """The reflection inverting coordinate i (root e_i)."""
        flips = [0] * n
        flips[i] = 1
        return cls(tuple(range(n)), tuple(flips))

    @classmethod
    def transposition(cls, n: int, i: int, j: int, sign: int = 1) -> "SignedPerm":
        """The reflection swapping coordinates i and j; sign=-1 also inverts both."""
        if i == j:
            raise ValueError("transposition needs distinct coordinates")
        images = list(range(n))
        images[i], images[j] = j, i
        flips = [0] * n
        if sign == -1:
            flips[i] = flips[j] = 1
        elif sign != 1:
            raise ValueError("sign must be +1 or -1")
        return cls(tuple(images), tuple(flips))

    @classmethod
    def minus_identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (1,) * n)

    def then(self, other: "SignedPerm") -> "SignedPerm":
        """Apply self first, then other."""
        if len(other.images) != len(self.images):
            raise ValueError("rank mismatch")
        oi, of = other.images, other.flips
        images = tuple(oi[k] for k in self.images)
        flips = tuple(f ^ of[k] for f, k in zip(self.flips, self.images))
        return SignedPerm(images, flips)

    def inverse(self) -> "SignedPerm":
        n = len(self.images)
        images = [0] * n
        flips = [0] * n
        for i, (k, f) in enumerate(zip(self.images, self.flips)):
            images[k] = i
            flips[k] = f
        return SignedPerm(tuple(images), tuple(flips))

    def is_identity(self) -> bool:
        return all(k == i for i, k in enumerate(self.images)) and not any(self.flips)

    def flip_count(self) -> int:
        return sum(self.flips)

    def key(self) -> tuple:
        return (self.images, self.flips)


@dataclass(frozen=True, slots=True)
class DihedralElt:
    """Element r**rot * s**refl of the dihedral group of order 2m."""

    m: int
    rot: int
    refl: bool

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("dihedral modulus must be positive")
        if not 0 <= self.rot < self.m:
            raise ValueError(f"rot {self.rot} not reduced modulo {self.m}")

    @classmethod
    def identity(cls, m: int) -> "DihedralElt":
        return cls(m, 0, False)

    def then(self, other: "DihedralElt") -> "DihedralElt":
        """Apply self first, then other (written product other*self)."""
        if other.m != self.m:
            raise ValueError("rank mismatch")
        rot = (other.rot - self.rot) % self.m if other.refl else (other.rot + self.rot) % self.m
        return DihedralElt(self.m, rot, self.refl ^ other.refl)

    def inverse(self) -> "DihedralElt":
        if self.refl:
            return self
        return DihedralElt(self.m, (-self.rot) % self.m, False)

    def is_identity(self) -> bool:
        return self.rot == 0 and not self.refl

    def key(self) -> tuple:
        return (self.refl, self.rot)


@dataclass(frozen=True, slots=True)
class GoldenNum:
    """Exact element a + b*sqrt(5) of Q(sqrt 5)."""

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, a, b=0) -> "GoldenNum":
        return cls(Fraction(a), Fraction(b))

    def __add__(self, other: "GoldenNum") -> "GoldenNum":
        return GoldenNum(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GoldenNum") -> "GoldenNum":
        return GoldenNum(self.a - other.a, self.b - other.b)

    def __mul__(self, other: "GoldenNum") -> "GoldenNum":
        return GoldenNum(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def __neg__(self) -> "GoldenNum":
        return GoldenNum(-self.a, -self.b)

    def scale(self, q: Fraction) -> "GoldenNum":
        return GoldenNum(self.a * q, self.b * q)

    def key(self) -> tuple:
        return (self.a, self.b)


_G0 = GoldenNum.of(0)
_G1 = GoldenNum.of(1)
# golden ratio phi = (1 + sqrt 5)/2
_PHI = GoldenNum(Fraction(1, 2), Fraction(1, 2))


@dataclass(frozen=True, slots=True)
class H3Elt:
    """Orthogonal 3x3 matrix over Q(sqrt 5), row-major entries."""

    entries: tuple[GoldenNum, ...]

    @classmethod
    def identity(cls) -> "H3Elt":
        e = [_G0] * 9
        e[0] = e[4] = e[8] = _G1
        return cls(tuple(e))

    @classmethod
    def reflection(cls, root: tuple[GoldenNum, GoldenNum, GoldenNum]) -> "H3Elt":
        """Reflection through the hyperplane orthogonal to a unit root."""
        norm = root[0] * root[0] + root[1] * root[1] + root[2] * root[2]
        if norm != _G1:
            raise ValueError("root must have unit norm")
        two = GoldenNum.of(2)
        ent = []
        for i in range(3):
            for j in range(3):
                v = -(two * root[i] * root[j])
                if i == j:
                    v = v + _G1
                ent.append(v)
        return cls(tuple(ent))

    def then(self, other: "H3Elt") -> "H3Elt":
        # apply self first: matrix product other @ self
        s, o = self.entries, other.entries
        ent = []
        for i in range(3):
            for j in range(3):
                acc = _G0
                for k in range(3):
                    acc = acc + o[3 * i + k] * s[3 * k + j]
                ent.append(acc)
        return H3Elt(tuple(ent))

    def inverse(self) -> "H3Elt":
        # orthogonal, so the inverse is the transpose
        s = self.entries
        return H3Elt(tuple(s[3 * j + i] for i in range(3) for j in range(3)))

    def is_identity(self) -> bool:
        return self == H3Elt.identity()

    def key(self) -> tuple:
        return tuple((g.a, g.b) for g in self.entries)


def compose(a, b):
    """The package-wide composition: apply ``a`` first, then ``b``."""
    return a.then(b)


def element_order(a) -> int:
    w = a
    k = 1
    while not w.is_identity():
        w = compose(w, a)
        k += 1
    return k


# ---------------------------------------------------------------------------
# Coxeter presentation data


@dataclass(frozen=True)
class CoxeterPresentation:
    """Symmetric matrix of pairwise orders m_ij (m_ii = 1)."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        g = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != g:
                raise ValueError("matrix must be square")
            if row[i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j in range(g):
                if i != j and (row[j] < 2 or row[j] != self.matrix[j][i]):
                    raise ValueError("off-diagonal entries must be symmetric and >= 2")

    @property
    def num_generators(self) -> int:
        return len(self.matrix)


def _chain_matrix(n: int, labels: dict[tuple[int, int], int]) -> CoxeterPresentation:
    mat = [[2] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 1
    for (i, j), m in labels.items():
        mat[i][j] = mat[j][i] = m
    return CoxeterPresentation(tuple(tuple(row) for row in mat))


def coxeter_presentation(gid: GroupId) -> CoxeterPresentation:
    """Coxeter matrix of the standard diagram of the family."""
    fam, n = gid.family, gid.param
    if fam == "A":
        return _chain_matrix(n, {(i, i + 1): 3 for i in range(n - 1)})
    if fam == "C":
        labels = {(0, 1): 4}
        labels.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return _chain_matrix(n, labels)
    if fam == "D":
        labels = {(0, 2): 3, (1, 2): 3}
        labels.update({(i, i + 1): 3 for i in range(2, n - 1)})
        return _chain_matrix(n, labels)
    if fam == "I2":
        return CoxeterPresentation(((1, n), (n, 1)))
    if fam == "H3":
        return _chain_matrix(3, {(0, 1): 5, (1, 2): 3})
    if fam == "H4":
        return _chain_matrix(4, {(0, 1): 5, (1, 2): 3, (2, 3): 3})
    if fam == "F4":
        return _chain_matrix(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})
    # E6/E7/E8: a chain with one extra node attached to the third chain node
    rank = int(fam[1])
    labels = {(i, i + 1): 3 for i in range(rank - 2)}
    labels[(2, rank - 1)] = 3
    return _chain_matrix(rank, labels)


def _h3_generators() -> list[H3Elt]:
    # unit simple roots at pairwise angles 4pi/5, 2pi/3, pi/2
    half = Fraction(1, 2)
    a1 = (_G1, _G0, _G0)
    a2 = (-(_PHI.scale(half)), GoldenNum.of(Fraction(-1, 2)), (_G1 - _PHI).scale(half))
    a3 = (_G0, _G1, _G0)
    return [H3Elt.reflection(a1), H3Elt.reflection(a2), H3Elt.reflection(a3)]


def coxeter_generators(gid: GroupId):
    """Simple reflections realizing the Coxeter presentation of gid.

    A_n acts as S_{n+1} on n+1 coordinates with no sign flips; C_n uses the
    first-coordinate flip followed by adjacent transpositions; D_n replaces
    the flip by the signed transposition of the first two coordinates.  These
    are the standard simple systems; any conjugate choice generates the same
    group and yields identical counts everywhere downstream.
    """
    fam, n = gid.family, gid.param
    if fam == "A":
        r = n + 1
        return [SignedPerm.transposition(r, i, i + 1) for i in range(n)]
    if fam == "C":
        gens = [SignedPerm.coordinate_flip(n, 0)]
        gens += [SignedPerm.transposition(n, i, i + 1) for i in range(n - 1)]
        return gens
    if fam == "D":
        gens = [SignedPerm.transposition(n, 0, 1, sign=-1)]
        gens += [SignedPerm.transposition(n, i, i + 1) for i in range(n - 1)]
        for g in gens:
            assert g.flip_count() % 2 == 0
        return gens
    if fam == "I2":
        return [DihedralElt(n, 0, True), DihedralElt(n, 1, True)]
    if fam == "H3":
        return _h3_generators()
    raise UnsupportedRepresentationError(f"{gid.label()} has no concrete representation")


def generate_closure(generators, budget: int = DEFAULT_ENUMERATION_BUDGET):
    """BFS closure of the generators; returns (elements, parent, genidx).

    elements[0] is the identity; for k > 0, elements[k] equals
    compose(elements[parent[k]], generators[genidx[k]]).
    """
    if not generators:
        raise ValueError("need at least one generator")
    first = generators[0]
    if isinstance(first, SignedPerm):
        ident = SignedPerm.identity(first.rank)
    elif isinstance(first, DihedralElt):
        ident = DihedralElt.identity(first.m)
    else:
        ident = H3Elt.identity()
    elements = [ident]
    parent = [-1]
    genidx = [-1]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for pi in frontier:
            w = elements[pi]
            for gi, g in enumerate(generators):
                v = w.then(g)
                if v not in seen:
                    if len(elements) >= budget:
                        raise BudgetExceededError(
                            f"closure exceeded budget of {budget} elements"
                        )
                    seen[v] = len(elements)
                    elements.append(v)
                    parent.append(pi)
                    genidx.append(gi)
                    nxt.append(seen[v])
        frontier = nxt
    return elements, parent, genidx


def enumerate_elements(gid: GroupId, budget: int = DEFAULT_ENUMERATION_BUDGET):
    """All elements of gid in canonical (sorted-key) order."""
    expected = gid.order()
    if expected > budget:
        raise BudgetExceededError(
            f"{gid.label()} has order {expected}, above the budget of {budget}"
        )
    elements, _, _ = generate_closure(coxeter_generators(gid), budget=budget)
    if len(elements) != expected:
        raise AssertionError(
            f"closure of {gid.label()} produced {len(elements)} elements, expected {expected}"
        )
    elements.sort(key=lambda w: w.key())
    return elements
