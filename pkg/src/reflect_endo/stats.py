"""Exact statistics of a uniformly random endomorphism.

The image order of a random endomorphism is a finite random variable whose
mass at k is (number of endomorphisms with kernel index k) / (total count);
everything downstream of the endomorphism table is therefore exact rational
arithmetic.  Square roots and float columns are rendered from the exact
values at a configurable precision with bankers' rounding.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from . import counting
from .groups import GroupId
from .tables import endomorphism_table

DEFAULT_SQRT_DIGITS = 12

# below this rank the generic normal-subgroup layout of C_n starts to differ,
# so the reflection-kernel and normal-image closed forms are served as-is but
# flagged: they need not equal the true probability there
ASYMPTOTIC_MIN_RANK = 7


@dataclass(frozen=True)
class ImageOrderDistribution:
    group: GroupId
    support: tuple[tuple[int, int], ...]  # (image_order, endomorphism_count)
    total: int

    def __post_init__(self) -> None:
        if sum(c for _, c in self.support) != self.total:
            raise ValueError("distribution masses do not sum to the total")
        orders = [k for k, _ in self.support]
        if orders != sorted(orders) or len(set(orders)) != len(orders):
            raise ValueError("support must be strictly increasing")
        g_order = self.group.order()
        if any(g_order % k for k, _ in self.support):
            raise ValueError("image orders must divide the group order")

    def probability(self, image_order: int) -> Fraction:
        for k, c in self.support:
            if k == image_order:
                return Fraction(c, self.total)
        return Fraction(0)

    def masses(self) -> list[tuple[int, Fraction]]:
        return [(k, Fraction(c, self.total)) for k, c in self.support]


def image_order_distribution(gid: GroupId) -> ImageOrderDistribution:
    """Distribution of the image order of a uniformly random endomorphism."""
    table = endomorphism_table(gid)
    acc: dict[int, int] = {}
    for row in table.rows:
        if row.e:
            acc[row.kernel_index] = acc.get(row.kernel_index, 0) + row.e
    support = tuple(sorted(acc.items()))
    return ImageOrderDistribution(gid, support, table.total)


def expected_image_order(gid: GroupId) -> Fraction:
    dist = image_order_distribution(gid)
    return Fraction(sum(k * c for k, c in dist.support), dist.total)


def variance_image_order(gid: GroupId) -> Fraction:
    dist = image_order_distribution(gid)
    second = Fraction(sum(k * k * c for k, c in dist.support), dist.total)
    mean = expected_image_order(gid)
    return second - mean * mean


def sqrt_of_ratio(value: Fraction, digits: int = DEFAULT_SQRT_DIGITS) -> Decimal:
    """Square root of an exact nonnegative rational, to `digits` significant digits."""
    if value < 0:
        raise ValueError("cannot take the square root of a negative value")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        approx = (Decimal(value.numerator) / Decimal(value.denominator)).sqrt()
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        return +approx


def std_image_order(gid: GroupId, digits: int = DEFAULT_SQRT_DIGITS) -> Decimal:
    return sqrt_of_ratio(variance_image_order(gid), digits)


def prob_automorphism(gid: GroupId) -> Fraction:
    """An endomorphism is an automorphism iff its image order is the group order."""
    return Fraction(counting.aut_order(gid), counting.endo_count(gid))


def prob_centre_in_kernel(gid: GroupId) -> Fraction:
    """Probability that the central involution dies under a random endomorphism."""
    fam, n = gid.family, gid.param
    if fam == "A":
        if n == 1:
            # the whole rank-1 group is central; only the trivial map kills it
            return Fraction(1, 2)
        return Fraction(1)
    if fam == "C":
        if n % 2 == 0:
            return 1 - prob_automorphism(gid)
        v = counting.involution_count(gid)
        numerator = 1 + v + (1 << (n + 1)) * math.factorial(n)
        return Fraction(numerator, counting.endo_count(gid))
    if fam == "D":
        if n % 2:
            return Fraction(1)  # trivial centre
        return 1 - prob_automorphism(gid)
    raise ValueError(f"no centre-in-kernel probability for {gid.label()}")


def _warn_below_asymptotic_range(n: int, what: str) -> None:
    if n < ASYMPTOTIC_MIN_RANK:
        warnings.warn(
            f"{what} at rank {n}: below rank {ASYMPTOTIC_MIN_RANK} the closed form "
            "does not account for exceptional normal-subgroup structure",
            stacklevel=3,
        )


def prob_reflection_in_kernel(n: int, reflection_class: str) -> Fraction:
    """Probability that a reflection of the given class dies under a random
    endomorphism of the rank-n hyperoctahedral group.

    ``coordinate_flip`` is the class of single-coordinate inversions;
    ``transposition`` is the class of coordinate swaps.
    """
    if n < 2:
        raise ValueError("rank must be >= 2")
    _warn_below_asymptotic_range(n, "reflection-kernel probability")
    gid = GroupId("C", n)
    v = counting.involution_count(gid)
    h = counting.endo_count(gid)
    if reflection_class == "coordinate_flip":
        return Fraction(1 + v + (1 << n) * math.factorial(n), h)
    if reflection_class == "transposition":
        return Fraction(1 + v, h)
    raise ValueError("reflection_class must be 'coordinate_flip' or 'transposition'")


def prob_normal_image(n: int) -> Fraction:
    """Probability that a random endomorphism of the rank-n hyperoctahedral
    group has image normal in the whole group."""
    if n < 2:
        raise ValueError("rank must be >= 2")
    _warn_below_asymptotic_range(n, "normal-image probability")
    numerator = (1 << (n + 1)) * math.factorial(n) + 4
    return Fraction(numerator, counting.endo_count(GroupId("C", n)))


def prob_image_below_factorial(n: int) -> Fraction:
    """Probability that the image order falls below n factorial (C_n)."""
    dist = image_order_distribution(GroupId("C", n))
    cut = math.factorial(n)
    return Fraction(sum(c for k, c in dist.support if k < cut), dist.total)


# ---------------------------------------------------------------------------
# convergence tables


def _expected_asymptote(gid: GroupId) -> Fraction:
    fam, n = gid.family, gid.param
    if fam == "C":
        if n % 2 == 0:
            return Fraction((1 << (n - 1)) * math.factorial(n))
        return Fraction(3 * (1 << (n - 3)) * math.factorial(n))
    if fam == "D":
        return Fraction((1 << (n - 2)) * math.factorial(n))
    if fam == "A":
        return Fraction(math.factorial(n + 1))
    raise ValueError(f"no expected-image asymptote for {gid.label()}")


def _variance_asymptote(gid: GroupId) -> Fraction:
    # square of the asymptotic standard deviation; zero signals decay for A_n
    fam, n = gid.family, gid.param
    if fam == "C":
        if n % 2 == 0:
            return Fraction(((1 << (n - 1)) * math.factorial(n)) ** 2)
        return Fraction(11 * ((1 << (n - 3)) * math.factorial(n)) ** 2)
    if fam == "D":
        return Fraction(((1 << (n - 2)) * math.factorial(n)) ** 2)
    if fam == "A":
        return Fraction(0)
    raise ValueError(f"no deviation asymptote for {gid.label()}")


def expected_image_ratio(gid: GroupId) -> Fraction:
    """Exact expected image order divided by its leading-order asymptote."""
    return expected_image_order(gid) / _expected_asymptote(gid)


def std_image_ratio(gid: GroupId, digits: int = 20) -> Decimal:
    """Standard deviation over its asymptote; for A_n, over the group order."""
    var = variance_image_order(gid)
    target = _variance_asymptote(gid)
    if target == 0:
        target = Fraction(math.factorial(gid.param + 1) ** 2)
    return sqrt_of_ratio(var / target, digits)


def endo_count_ratio(n: int) -> Fraction:
    """Endomorphism count of C_n over its leading term 2^(n+2) n!."""
    return Fraction(counting.endo_count(GroupId("C", n)), (1 << (n + 2)) * math.factorial(n))


_QUANTITIES_C = (
    "endo_count_ratio",
    "prob_image_below_factorial",
    "seq_a",
    "seq_b",
    "prob_automorphism",
    "prob_centre_in_kernel",
    "prob_normal_image",
    "prob_flip_reflection_in_kernel",
    "prob_transposition_in_kernel",
    "expected_image_ratio",
)


def asymptotic_report(family: str, n_values) -> dict[str, list[tuple[int, Fraction, float, Fraction | None]]]:
    """Convergence tables: rows are (n, exact value, float value, reference limit)."""
    if family not in ("A", "C", "D"):
        raise ValueError("family must be one of A, C, D")
    report: dict[str, list[tuple[int, Fraction, float, Fraction | None]]] = {}

    def emit(name: str, n: int, value: Fraction, limit: Fraction | None) -> None:
        report.setdefault(name, []).append((n, value, float(value), limit))

    for n in n_values:
        gid = GroupId(family, n)
        if family == "C":
            emit("endo_count_ratio", n, endo_count_ratio(n), Fraction(1))
            emit("prob_image_below_factorial", n, prob_image_below_factorial(n), Fraction(0))
            emit("seq_a", n, counting.seq_a(n), Fraction(0))
            emit("seq_b", n, counting.seq_b(n), Fraction(0))
            aut_limit = Fraction(1, 2) if n % 2 == 0 else Fraction(1, 4)
            emit("prob_automorphism", n, prob_automorphism(gid), aut_limit)
            emit("prob_centre_in_kernel", n, prob_centre_in_kernel(gid), Fraction(1, 2))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                emit("prob_normal_image", n, prob_normal_image(n), Fraction(1, 2))
                emit(
                    "prob_flip_reflection_in_kernel",
                    n,
                    prob_reflection_in_kernel(n, "coordinate_flip"),
                    Fraction(1, 4),
                )
                emit(
                    "prob_transposition_in_kernel",
                    n,
                    prob_reflection_in_kernel(n, "transposition"),
                    Fraction(0),
                )
            emit("expected_image_ratio", n, expected_image_ratio(gid), Fraction(1))
        elif family == "D":
            emit("prob_automorphism", n, prob_automorphism(gid), Fraction(1, 2))
            emit(
                "prob_centre_in_kernel",
                n,
                prob_centre_in_kernel(gid),
                Fraction(1, 2) if n % 2 == 0 else Fraction(1),
            )
            emit("expected_image_ratio", n, expected_image_ratio(gid), Fraction(1))
        else:
            emit("prob_automorphism", n, prob_automorphism(gid), Fraction(1))
            emit("prob_centre_in_kernel", n, prob_centre_in_kernel(gid), Fraction(1))
            emit("expected_image_ratio", n, expected_image_ratio(gid), Fraction(1))
    return report
