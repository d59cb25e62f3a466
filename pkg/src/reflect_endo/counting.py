"""Closed-form counts for reflection-group endomorphisms and subgroups.

Everything here is exact: integers are Python ints, intermediate fractional
sums are fractions.Fraction, and any division that must produce an integer is
checked.  Counts for the twelve groups whose endomorphism structure does not
follow the generic pattern (A_3, A_5, C_4, C_6, D_4, D_6 and the six
exceptional families) are embedded constants; the small ones are recomputed
independently by the oracle module.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .groups import GroupId

EXCEPTIONAL_IDS = (
    GroupId("H3"),
    GroupId("H4"),
    GroupId("F4"),
    GroupId("E6"),
    GroupId("E7"),
    GroupId("E8"),
    GroupId("A", 3),
    GroupId("A", 5),
    GroupId("C", 4),
    GroupId("C", 6),
    GroupId("D", 4),
    GroupId("D", 6),
)

# rows: (kernel_label, kernel_index, quotient_label, z, aut-or-None, e);
# kernel_index times kernel order always equals the group order
_EXCEPTIONAL_ROWS: dict[str, tuple[tuple, ...]] = {
    "H3": (
        ("H_3", 1, "{1}", 1, 1, 1),
        ("H_3^+", 2, "C_2", 31, 1, 31),
        ("Z(H_3)", 60, "A_5", 1, 120, 120),
        ("{1}", 120, "H_3", 1, 120, 120),
    ),
    "H4": (
        ("H_4", 1, "{1}", 1, 1, 1),
        ("H_4^+", 2, "C_2", 571, 1, 571),
        ("Z(H_4)", 7200, "Inn(H_4)", 0, 14400, 0),
        ("{1}", 14400, "H_4", 1, 28800, 28800),
    ),
    "F4": (
        ("F_4", 1, "{1}", 1, 1, 1),
        ("F_4^+", 2, "C_2", 139, 1, 139),
        ("+F_4", 2, "C_2", 139, 1, 139),
        ("(F_4)_+", 2, "C_2", 139, 1, 139),
        ("+(F_4)_+", 4, "(C_2)^2", 597, 6, 3582),
        ("(F_4)_1", 6, "S_3", 352, 6, 2112),
        ("(F_4)_2", 6, "S_3", 352, 6, 2112),
        ("(F_4)_1^+", 12, "C_2 x S_3", 560, 12, 6720),
        ("(F_4)_2^+", 12, "C_2 x S_3", 560, 12, 6720),
        ("N", 36, "S_3 x S_3", 64, 72, 4608),
        ("{±1}", 576, "Inn(F_4)", 0, 1152, 0),
        ("{1}", 1152, "F_4", 1, 4608, 4608),
    ),
    "E6": (
        ("E_6", 1, "{1}", 1, 1, 1),
        ("E_6^+", 2, "C_2", 891, 1, 891),
        ("{1}", 51840, "E_6", 1, 51840, 51840),
    ),
    "E7": (
        ("E_7", 1, "{1}", 1, 1, 1),
        ("E_7^+", 2, "C_2", 10207, 1, 10207),
        ("Z(E_7)", 1451520, "Inn(E_7)", 1, 1451520, 1451520),
        ("{1}", 2903040, "E_7", 1, 1451520, 1451520),
    ),
    "E8": (
        ("E_8", 1, "{1}", 1, 1, 1),
        ("E_8^+", 2, "C_2", 199951, 1, 199951),
        ("{±1}", 348364800, "Inn(E_8)", 0, None, 0),
        ("{1}", 696729600, "E_8", 1, 696729600, 696729600),
    ),
    "A3": (
        ("A_3", 1, "{1}", 1, 1, 1),
        ("A_3^+", 2, "C_2", 9, 1, 9),
        ("V_4", 6, "S_3", 4, 6, 24),
        ("{1}", 24, "A_3", 1, 24, 24),
    ),
    "A5": (
        ("A_5", 1, "{1}", 1, 1, 1),
        ("A_5^+", 2, "C_2", 75, 1, 75),
        ("{1}", 720, "A_5", 1, 1440, 1440),
    ),
    "C4": (
        ("C_4", 1, "{1}", 1, 1, 1),
        ("C_4^+", 2, "C_2", 75, 1, 75),
        ("(C_4)_1", 2, "C_2", 75, 1, 75),
        ("+C_4", 2, "C_2", 75, 1, 75),
        ("(C_4)_1^+", 4, "(C_2)^2", 277, 6, 1662),
        ("N⋊V_4", 6, "S_3", 64, 6, 384),
        ("N^+⋊V_4", 12, "C_2 x S_3", 96, 12, 1152),
        ("N", 24, "S_4", 32, 24, 768),
        ("N^+", 48, "C_2 x S_4", 32, 48, 1536),
        ("{±1}", 192, "C_4/{±1}", 0, 384, 0),
        ("{1}", 384, "C_4", 1, 768, 768),
    ),
    "C6": (
        ("C_6", 1, "{1}", 1, 1, 1),
        ("C_6^+", 2, "C_2", 1383, 1, 1383),
        ("(C_6)_1", 2, "C_2", 1383, 1, 1383),
        ("+C_6", 2, "C_2", 1383, 1, 1383),
        ("(C_6)_1^+", 4, "(C_2)^2", 32631, 6, 195786),
        ("N", 720, "S_6", 64, 1440, 92160),
        ("N^+", 1440, "C_2 x S_6", 32, 2880, 92160),
        ("{±1}", 23040, "C_6/{±1}", 0, 23040, 0),
        ("{1}", 46080, "C_6", 1, 92160, 92160),
    ),
    "D4": (
        ("D_4", 1, "{1}", 1, 1, 1),
        ("D_4^+", 2, "C_2", 43, 1, 43),
        ("N⋊V_4", 6, "S_3", 32, 6, 192),
        ("N", 24, "S_4", 24, 24, 576),
        ("(D_4)_13", 24, "S_4", 24, 24, 576),
        ("(D_4)_14", 24, "S_4", 24, 24, 576),
        ("{±1}", 96, "D_4/{±1}", 0, 576, 0),
        ("{1}", 192, "D_4", 1, 1152, 1152),
    ),
    "D6": (
        ("D_6", 1, "{1}", 1, 1, 1),
        ("D_6^+", 2, "C_2", 751, 1, 751),
        ("N", 720, "S_6", 64, 1440, 92160),
        ("{±1}", 11520, "D_6/{±1}", 0, 23040, 0),
        ("{1}", 23040, "D_6", 1, 46080, 46080),
    ),
}

_EXCEPTIONAL_TOTALS = {
    "H3": 272,
    "H4": 29372,
    "F4": 30880,
    "E6": 52732,
    "E7": 2913248,
    "E8": 696929552,
    "A3": 58,
    "A5": 1516,
    "C4": 6496,
    "C6": 476416,
    "D4": 3116,
    "D6": 138992,
}

_EXCEPTIONAL_INVOLUTIONS = {
    "H3": 31,
    "H4": 571,
    "F4": 139,
    "E6": 891,
    "E7": 10207,
    "E8": 199951,
}


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"expected an integer, got {x}")
    return x.numerator


def totient(m: int) -> int:
    if m < 1:
        raise ValueError("totient needs a positive argument")
    result = m
    k = m
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def seq_a(n: int) -> Fraction:
    """a_n = sum over k of 1 / (4^k k! (n-2k)!)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(
        (
            Fraction(1, (1 << (2 * k)) * math.factorial(k) * math.factorial(n - 2 * k))
            for k in range(n // 2 + 1)
        ),
        Fraction(0),
    )


def seq_b(n: int) -> Fraction:
    """b_n = sum over (k, l) of (3/8)^l 2^n / (2^(7k) k! l! (n-4k-2l)!)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for k in range(n // 4 + 1):
        for l in range(n // 2 - 2 * k + 1):
            total += Fraction(3**l * (1 << n), (1 << (7 * k + 3 * l)) * math.factorial(k) * math.factorial(l) * math.factorial(n - 4 * k - 2 * l))
    return total


def involution_count(gid: GroupId) -> int:
    """Number of involutions (elements of order exactly 2)."""
    fam = gid.family
    if fam == "I2":
        m = gid.param
        return m if m % 2 else m + 1
    if fam in _EXCEPTIONAL_INVOLUTIONS:
        return _EXCEPTIONAL_INVOLUTIONS[fam]
    if fam == "A":
        # the symmetric group on param+1 letters
        n = gid.param + 1
        return _as_int(
            sum(
                (
                    Fraction(math.factorial(n), (1 << k) * math.factorial(k) * math.factorial(n - 2 * k))
                    for k in range(1, n // 2 + 1)
                ),
                Fraction(0),
            )
        )
    n = gid.param
    if fam == "C":
        # -1 + 2^n n! a_n
        return _as_int((1 << n) * math.factorial(n) * seq_a(n)) - 1
    if fam == "D":
        order = (1 << (n - 1)) * math.factorial(n)
        total = Fraction(math.factorial(n), math.factorial(n // 2))
        for k in range(n // 2):
            total += Fraction(order, (1 << (2 * k)) * math.factorial(k) * math.factorial(n - 2 * k))
        return _as_int(total) - 1
    raise ValueError(f"no involution count for {gid.label()}")


def commuting_pairs_leq2(n: int) -> int:
    """Ordered pairs of commuting elements of order at most 2 in C_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _as_int((1 << n) * math.factorial(n) * seq_b(n))


def klein_subgroup_count(n: int) -> int:
    """Subgroups of C_n isomorphic to the Klein four-group."""
    if n < 2:
        raise ValueError("n must be >= 2")
    v = involution_count(GroupId("C", n))
    numerator = 2 + commuting_pairs_leq2(n) - 3 * (v + 1)
    if numerator % 6:
        raise AssertionError(f"klein count numerator {numerator} not divisible by 6")
    return numerator // 6


def symmetric_subgroup_count(gid: GroupId) -> int:
    """Subgroups isomorphic to the full symmetric group S_n inside C_n or D_n."""
    n = gid.param
    if gid.family == "C":
        if n == 4:
            return 32
        if n < 3:
            raise ValueError("defined for C_n with n >= 3")
        return 1 << n
    if gid.family == "D":
        if n == 4:
            return 24
        return (1 << n) if n % 2 == 0 else (1 << (n - 1))
    raise ValueError("defined for C_n and D_n only")


def c2_x_symmetric_subgroup_count(n: int) -> int:
    """Subgroups of C_n isomorphic to C_2 x S_n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n == 4:
        return 32
    return 1 << (n - 1)


def index2_mod_centre_count(gid: GroupId) -> int:
    """Subgroups isomorphic to the quotient by the central involution."""
    n = gid.param
    if gid.family == "C":
        if n < 3:
            raise ValueError("defined for C_n with n >= 3")
        return 2 if n % 2 else 0
    if gid.family == "D":
        if n % 2:
            raise ValueError(f"D_{n} has trivial centre for odd n; no such quotient")
        return 0
    raise ValueError("defined for C_n and D_n only")


def aut_order(gid: GroupId) -> int:
    fam, n = gid.family, gid.param
    if fam == "A":
        if n == 1:
            return 1
        if n == 5:
            return 1440
        return math.factorial(n + 1)
    if fam == "C":
        if n == 2:
            return 8  # same automorphisms as the order-8 dihedral group
        if n == 4:
            return 768
        return (1 << (n + 1 if n % 2 == 0 else n)) * math.factorial(n)
    if fam == "D":
        if n == 4:
            return 1152
        return (1 << (n if n % 2 == 0 else n - 1)) * math.factorial(n)
    if fam == "I2":
        return 6 if n == 2 else n * totient(n)
    exceptional = {
        "H3": 120,
        "H4": 28800,
        "F4": 4608,
        "E6": 51840,
        "E7": 1451520,
        "E8": 696729600,
    }
    return exceptional[fam]


def endo_count(gid: GroupId) -> int:
    """Number of endomorphisms of the group."""
    fam, n = gid.family, gid.param
    if fam == "I2":
        return n * n + 1 if n % 2 else (n + 2) ** 2
    key = gid.label() if gid.param is not None else fam
    if key in _EXCEPTIONAL_TOTALS:
        return _EXCEPTIONAL_TOTALS[key]
    if fam == "A":
        if n == 1:
            return 2  # the order-2 group has only the trivial and identity maps
        f = math.factorial(n + 1)
        total = Fraction(f)
        for k in range((n + 1) // 2 + 1):
            total += Fraction(f, (1 << k) * math.factorial(k) * math.factorial(n + 1 - 2 * k))
        return _as_int(total)
    if fam == "C":
        if n == 2:
            return 36  # isomorphic to the order-8 dihedral group
        return _as_int((1 << n) * math.factorial(n) * (4 + seq_b(n)))
    if fam == "D":
        w_half = (1 << (n - 1)) * math.factorial(n)
        exponent = n + (1 + (-1) ** n) // 2
        total = Fraction((1 << exponent) * math.factorial(n))
        total += Fraction(math.factorial(n), math.factorial(n // 2))
        for k in range(n // 2):
            total += Fraction(w_half, (1 << (2 * k)) * math.factorial(k) * math.factorial(n - 2 * k))
        return _as_int(total)
    raise ValueError(f"no endomorphism count for {gid.label()}")


def hom_count_dihedral(l: int, m: int) -> int:
    """Homomorphisms from the dihedral group of order 2l to the one of order 2m."""
    if l < 2 or m < 2:
        raise ValueError("both dihedral parameters must be >= 2")
    g = m * math.gcd(l, m)
    if l % 2 == 0 and m % 2 == 0:
        return 4 + 4 * m + g
    if l % 2 == 0:
        return 1 + 2 * m + g
    if m % 2 == 0:
        return 2 + g
    return 1 + g


def _i2p_target_params(target: GroupId) -> tuple[int, int, int]:
    """(n, tau, |W|) for a C_n or S_n target of maps from a dihedral source."""
    if target.family == "C":
        n = target.param
        return n, 2, (1 << n) * math.factorial(n)
    if target.family == "A":
        n = target.param + 1
        return n, 1, math.factorial(n)
    raise ValueError("target must be a C-family or A-family group")


def hom_count_I2p(p: int, target: GroupId) -> int:
    """Homomorphisms from the dihedral group of order 2p (p an odd prime)."""
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    n, tau, w = _i2p_target_params(target)
    total = Fraction(0)
    for k in range(n // p + 1):
        for l in range(k // 2 + 1):
            for m in range((n - k * p) // 2 + 1):
                denom = (
                    math.factorial(k - 2 * l)
                    * math.factorial(l)
                    * p**l
                    * (1 << (tau * (l + m)))
                    * math.factorial(n - k * p - 2 * m)
                    * math.factorial(m)
                )
                total += Fraction(w, denom)
    return _as_int(total)


def dihedral_subgroup_count(p: int, target: GroupId) -> int:
    """Subgroups isomorphic to the dihedral group of order 2p, p an odd prime."""
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    n, tau, w = _i2p_target_params(target)
    if p > n:
        return 0  # no order-p elements below rank p
    total = Fraction(0)
    for k in range(1, n // p + 1):
        for l in range(k // 2 + 1):
            for m in range((n - k * p) // 2 + 1):
                denom = (
                    math.factorial(k - 2 * l)
                    * math.factorial(l)
                    * p**l
                    * (1 << (tau * (l + m)))
                    * math.factorial(n - k * p - 2 * m)
                    * math.factorial(m)
                )
                total += Fraction(1, denom)
    return _as_int(total * Fraction(w, p * (p - 1)))


def exceptional_constants(gid: GroupId):
    """Embedded endomorphism-table rows for the twelve special groups."""
    key = gid.label()
    if key not in _EXCEPTIONAL_ROWS:
        raise ValueError(f"{key} is not one of the embedded exceptional tables")
    from .tables import EndoTableRow

    rows = []
    for label, index, quotient, z, aut, e in _EXCEPTIONAL_ROWS[key]:
        rows.append(
            EndoTableRow(
                kernel_label=label,
                kernel_index=index,
                quotient_label=quotient,
                z=z,
                aut=aut,
                e=e,
                provenance=f"embedded constant ({key}, kernel {label})",
            )
        )
    return rows
