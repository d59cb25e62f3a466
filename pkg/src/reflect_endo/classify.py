"""Signed cycle-types, involution-types, signs and conjugacy for
hyperoctahedral elements.

A signed permutation decomposes into cycles of its underlying permutation;
each cycle carries the product of the sign flips met along it.  The multiset
of (length, sign) pairs classifies conjugacy in C_n; in D_n the class splits
in two exactly when every cycle is positive of even length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    DEFAULT_ENUMERATION_BUDGET,
    GroupId,
    SignedPerm,
    compose,
    enumerate_elements,
)


class UndecidedConjugacyError(RuntimeError):
    """A split D_n class could not be resolved within the enumeration budget."""


@dataclass(frozen=True)
class SignedCycleType:
    """Multiset of (length, sign) pairs, stored sorted."""

    cycles: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.cycles)) != self.cycles:
            raise ValueError("cycles must be stored sorted")

    @property
    def rank(self) -> int:
        return sum(length for length, _ in self.cycles)

    def all_positive_even(self) -> bool:
        return all(sign == 1 and length % 2 == 0 for length, sign in self.cycles)


@dataclass(frozen=True)
class InvolutionType:
    """(t, u) with t negative 1-cycles and u positive 2-cycles; t + 2u <= n."""

    t: int
    u: int
    n: int

    def __post_init__(self) -> None:
        # cycle lengths must fit in the rank: t ones plus u twos
        if self.t + 2 * self.u > self.n:
            raise ValueError("involution-type must satisfy t + 2u <= n")


def signed_cycle_type(w: SignedPerm) -> SignedCycleType:
    n = w.rank
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        sign = 1
        i = start
        while not seen[i]:
            seen[i] = True
            if w.flips[i]:
                sign = -sign
            i = w.images[i]
            length += 1
        cycles.append((length, sign))
    return SignedCycleType(tuple(sorted(cycles)))


def involution_type(w: SignedPerm) -> InvolutionType | None:
    """(t, u) when w squares to the identity, else None."""
    t = u = 0
    for length, sign in signed_cycle_type(w).cycles:
        if length == 1 and sign == -1:
            t += 1
        elif length == 2 and sign == 1:
            u += 1
        elif not (length == 1 and sign == 1):
            return None
    return InvolutionType(t, u, w.rank)


def perm_parity(w: SignedPerm) -> int:
    """+1 for an even underlying permutation, -1 for odd."""
    n = w.rank
    seen = [False] * n
    transpositions = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = w.images[i]
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


def sign_pair(w: SignedPerm) -> tuple[int, int]:
    """(determinant of the flip part, determinant of the permutation part)."""
    det_flips = -1 if w.flip_count() % 2 else 1
    return (det_flips, perm_parity(w))


def central_generator(n: int) -> SignedPerm:
    """The central involution acting as minus the identity."""
    if n < 2:
        raise ValueError("central generator needs rank >= 2")
    return SignedPerm.minus_identity(n)


# membership tests for the three index-2 subgroups of C_n

def in_even_flip_subgroup(w: SignedPerm) -> bool:
    """(C_n)_1: even number of coordinate inversions (= D_n inside C_n)."""
    return w.flip_count() % 2 == 0


def in_even_perm_subgroup(w: SignedPerm) -> bool:
    """+C_n: even underlying permutation."""
    return perm_parity(w) == 1


def in_rotation_subgroup(w: SignedPerm) -> bool:
    """C_n^+: determinant +1 elements."""
    dx, dp = sign_pair(w)
    return dx * dp == 1


def is_conjugate(
    w1: SignedPerm,
    w2: SignedPerm,
    ambient: str,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> bool:
    """Conjugacy test in the ambient group ``"Cn"`` or ``"Dn"``.

    In C_n two elements are conjugate iff their signed cycle-types agree.  The
    same holds in D_n except when every cycle is positive of even length; that
    split case is resolved by an explicit orbit search, which needs the whole
    group and therefore respects the enumeration budget.
    """
    if ambient not in ("Cn", "Dn"):
        raise ValueError("ambient must be 'Cn' or 'Dn'")
    if w1.rank != w2.rank:
        raise ValueError("rank mismatch")
    n = w1.rank
    if ambient == "Dn":
        for w in (w1, w2):
            if w.flip_count() % 2:
                raise ValueError("element has odd flip count, not in D_n")
    t1 = signed_cycle_type(w1)
    t2 = signed_cycle_type(w2)
    if t1 != t2:
        return False
    if ambient == "Cn" or not t1.all_positive_even():
        return True
    # split class: brute-force orbit of w1 under D_n conjugation
    gid = GroupId("D", n)
    if gid.order() > budget:
        raise UndecidedConjugacyError(
            f"split class in D_{n}: order {gid.order()} exceeds budget {budget}"
        )
    for g in enumerate_elements(gid, budget=budget):
        if compose(compose(g.inverse(), w1), g) == w2:
            return True
    return False
