"""Brute-force ground truth for every closed-form count in this package.

Homomorphisms out of a Coxeter presentation are found by depth-first
assignment of generator images.  Generator images must have order dividing 2,
so the candidate set is precomputed once per target; every pairwise relation
(g_i g_j)^(m_ij) = 1 only involves two generator images, so all relation
checks are precomputed as candidate-by-candidate compatibility rows and the
search itself touches nothing but those rows.  Output order is lexicographic
in the canonical element order of the target, independent of worker count.

Source-group elements are generated by breadth-first closure and carry
(parent, generator) links, so evaluating one homomorphism on the whole source
group is a single dynamic-programming sweep.
"""

from __future__ import annotations

import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import counting, tables
from .groups import (
    BudgetExceededError,
    CoxeterPresentation,
    GroupId,
    SignedPerm,
    coxeter_generators,
    coxeter_presentation,
    generate_closure,
)

DEFAULT_ORDER_BUDGET = 40_000
DEFAULT_WORK_BUDGET = 10**11
BUDGET_ENV_VAR = "REFLECT_ENDO_BUDGET"


def work_budget_from_env(default: int = DEFAULT_WORK_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None


class TargetTable:
    """Multiplication data of a finite target group on canonical indices.

    ``col(b)[a]`` is the index of elements[a] composed-then-by elements[b];
    storing columns makes right-multiplication by a fixed element one list
    lookup, which is the only operation the search and the evaluation sweep
    need.
    """

    def __init__(self, gid: GroupId, elements, cols, identity: int):
        self.gid = gid
        self.elements = elements
        self.cols = cols
        self.identity = identity
        self.index = {w: i for i, w in enumerate(elements)}
        self.order = len(elements)
        self.involution_or_identity = [
            i for i, w in enumerate(elements) if w.then(w).is_identity()
        ]

    @classmethod
    def build(cls, gid: GroupId, order_budget: int = DEFAULT_ORDER_BUDGET) -> "TargetTable":
        order = gid.order()
        if order > order_budget:
            raise BudgetExceededError(
                f"{gid.label()} has order {order}, above the order budget {order_budget}"
            )
        gens = coxeter_generators(gid)
        bfs, parent, genidx = generate_closure(gens, budget=order_budget)
        if len(bfs) != order:
            raise AssertionError(f"closure size {len(bfs)} != order {order}")
        canon = sorted(range(order), key=lambda i: bfs[i].key())
        pos = [0] * order
        for p, i in enumerate(canon):
            pos[i] = p
        elements = [bfs[i] for i in canon]
        index = {w: i for i, w in enumerate(elements)}
        rmul = [[index[w.then(g)] for w in elements] for g in gens]
        cols: list = [None] * order
        cols[pos[0]] = list(range(order))
        for k in range(1, order):
            src = cols[pos[parent[k]]]
            table = rmul[genidx[k]]
            cols[pos[k]] = [table[x] for x in src]
        return cls(gid, elements, cols, pos[0])

    def involution_count(self) -> int:
        return len(self.involution_or_identity) - 1


class SourceGroup:
    """A concrete source group with BFS (parent, generator) evaluation links."""

    def __init__(self, presentation: CoxeterPresentation, generators, budget: int):
        self.presentation = presentation
        self.generators = generators
        self.elements, self.parent, self.genidx = generate_closure(generators, budget=budget)
        self.order = len(self.elements)

    @classmethod
    def from_group(cls, gid: GroupId, budget: int = DEFAULT_ORDER_BUDGET) -> "SourceGroup":
        if gid.order() > budget:
            raise BudgetExceededError(
                f"source {gid.label()} has order {gid.order()}, above the budget {budget}"
            )
        return cls(coxeter_presentation(gid), coxeter_generators(gid), budget)


@dataclass(frozen=True)
class GenImages:
    """A homomorphism, recorded as the images of the source generators."""

    source: CoxeterPresentation
    images: tuple


@dataclass(frozen=True)
class KernelClass:
    kernel_order: int
    kernel_index: int
    image_order: int
    count: int
    kernel_elements: tuple[int, ...] = field(compare=False, default=())


@dataclass(frozen=True)
class CheckResult:
    name: str
    formula: str
    oracle: str
    passed: bool


@dataclass
class VerifyReport:
    group: str
    checks: list[CheckResult]
    elapsed_ms: int
    passed: bool

    def to_json_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "group": self.group,
            "checks": [
                {"name": c.name, "formula": c.formula, "oracle": c.oracle, "pass": c.passed}
                for c in self.checks
            ],
            "passed": self.passed,
        }
        if include_timing:
            doc["elapsed_ms"] = self.elapsed_ms
        return doc


def _estimate_work(num_candidates: int, num_generators: int, order: int) -> int:
    return num_candidates**num_generators + order * order


def _relation_rows(matrix, ttable: TargetTable):
    """For each pairwise order m, candidate-compatibility rows.

    rows_sorted[m][i] lists (ascending) the candidate positions j such that
    (x_i x_j)^m is the identity; rows_set[m][i] is the same as a frozenset.
    """
    cand = ttable.involution_or_identity
    cols = ttable.cols
    e = ttable.identity
    g = len(matrix)
    orders = {matrix[i][j] for i in range(g) for j in range(i + 1, g)}
    rows_sorted: dict[int, list] = {}
    rows_set: dict[int, list] = {}
    for m in sorted(orders):
        per_m_sorted = []
        per_m_set = []
        for a in cand:
            ok = []
            for j, b in enumerate(cand):
                p = cols[b][a]
                q = p
                for _ in range(m - 1):
                    q = cols[p][q]
                if q == e:
                    ok.append(j)
            per_m_sorted.append(tuple(ok))
            per_m_set.append(frozenset(ok))
        rows_sorted[m] = per_m_sorted
        rows_set[m] = per_m_set
    return rows_sorted, rows_set


def _extend(depth, assigned, g, rel, rows_sorted, rows_set, out):
    if depth == g:
        out.append(tuple(assigned))
        return
    constraints = rel[depth]
    j0, m0 = constraints[0]
    base = rows_sorted[m0][assigned[j0]]
    rest = [(rows_set[m][assigned[j]]) for j, m in constraints[1:]]
    for p in base:
        for s in rest:
            if p not in s:
                break
        else:
            assigned.append(p)
            _extend(depth + 1, assigned, g, rel, rows_sorted, rows_set, out)
            assigned.pop()


def _search(matrix, ttable: TargetTable, threads: int = 1) -> list[tuple[int, ...]]:
    """All generator-image tuples (as candidate positions mapped to indices)."""
    g = len(matrix)
    cand = ttable.involution_or_identity
    n_cand = len(cand)
    rel = [[(j, matrix[j][d]) for j in range(d)] for d in range(g)]
    if g == 1:
        return [(c,) for c in cand]
    rows_sorted, rows_set = _relation_rows(matrix, ttable)

    def run_chunk(first_positions) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        for p0 in first_positions:
            _extend(1, [p0], g, rel, rows_sorted, rows_set, out)
        return out

    if threads <= 1:
        positions = run_chunk(range(n_cand))
    else:
        chunks = [range(i, n_cand, threads) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run_chunk, chunks))
        # stitch back into first-position order so output matches a serial run
        merged: list[list[tuple[int, ...]]] = [[] for _ in range(n_cand)]
        for part in partials:
            for tup in part:
                merged[tup[0]].append(tup)
        positions = [tup for bucket in merged for tup in bucket]
    return [tuple(cand[p] for p in tup) for tup in positions]


def _as_presentation(source) -> CoxeterPresentation:
    if isinstance(source, CoxeterPresentation):
        return source
    if isinstance(source, GroupId):
        return coxeter_presentation(source)
    raise TypeError(f"cannot interpret {source!r} as a presentation")


def _as_target(target, order_budget: int) -> TargetTable:
    if isinstance(target, TargetTable):
        return target
    return TargetTable.build(target, order_budget)


def enumerate_hom_indices(
    source,
    target,
    *,
    order_budget: int = DEFAULT_ORDER_BUDGET,
    work_budget: int | None = None,
    threads: int = 1,
) -> tuple[TargetTable, list[tuple[int, ...]]]:
    """Like enumerate_homs but returns target element indices (internal form)."""
    pres = _as_presentation(source)
    if work_budget is None:
        work_budget = work_budget_from_env()
    if isinstance(target, GroupId):
        order = target.order()
        if order > order_budget:
            raise BudgetExceededError(
                f"{target.label()} has order {order}, above the order budget {order_budget}"
            )
    ttable = _as_target(target, order_budget)
    work = _estimate_work(len(ttable.involution_or_identity), pres.num_generators, ttable.order)
    if work > work_budget:
        raise BudgetExceededError(
            f"search bound {len(ttable.involution_or_identity)}^{pres.num_generators} "
            f"exceeds the work budget {work_budget}"
        )
    return ttable, _search(pres.matrix, ttable, threads=threads)


def enumerate_homs(
    source,
    target,
    *,
    order_budget: int = DEFAULT_ORDER_BUDGET,
    work_budget: int | None = None,
    threads: int = 1,
) -> list[GenImages]:
    """Every homomorphism from the presented source into the target group."""
    pres = _as_presentation(source)
    ttable, tuples = enumerate_hom_indices(
        source, target, order_budget=order_budget, work_budget=work_budget, threads=threads
    )
    return [GenImages(pres, tuple(ttable.elements[i] for i in tup)) for tup in tuples]


def evaluate_hom(images: tuple[int, ...], source: SourceGroup, ttable: TargetTable) -> list[int]:
    """Image of every source element (BFS order) under one homomorphism."""
    cols = ttable.cols
    vals = [0] * source.order
    vals[0] = ttable.identity
    parent = source.parent
    genidx = source.genidx
    for k in range(1, source.order):
        vals[k] = cols[images[genidx[k]]][vals[parent[k]]]
    return vals


def _hom_index_tuples(homs, ttable: TargetTable) -> list[tuple[int, ...]]:
    out = []
    for h in homs:
        if isinstance(h, GenImages):
            out.append(tuple(ttable.index[w] for w in h.images))
        else:
            out.append(tuple(h))
    return out


def kernel_classify(homs, source: SourceGroup, ttable: TargetTable) -> list[KernelClass]:
    """Group homomorphisms by their exact kernel element-set."""
    e = ttable.identity
    buckets: dict[frozenset, int] = {}
    for images in _hom_index_tuples(homs, ttable):
        vals = evaluate_hom(images, source, ttable)
        kernel = frozenset(k for k, v in enumerate(vals) if v == e)
        buckets[kernel] = buckets.get(kernel, 0) + 1
    classes = []
    for kernel, count in buckets.items():
        ko = len(kernel)
        if source.order % ko:
            raise AssertionError("kernel size does not divide the source order")
        classes.append(
            KernelClass(
                kernel_order=ko,
                kernel_index=source.order // ko,
                image_order=source.order // ko,
                count=count,
                kernel_elements=tuple(sorted(kernel)),
            )
        )
    classes.sort(key=lambda c: (c.kernel_index, c.kernel_elements))
    return classes


def kernel_multiset(classes) -> list[tuple[int, int]]:
    return sorted((c.kernel_index, c.count) for c in classes)


# ---------------------------------------------------------------------------
# subgroup censuses

_PATTERN_RE = re.compile(r"^(C2|Klein4|Sym\((\d+)\)|C2xSym\((\d+)\)|Dihedral\((\d+)\))$")


def _c2_x_sym_source(k: int, budget: int) -> SourceGroup:
    mat = [[2] * k for _ in range(k)]
    for i in range(k):
        mat[i][i] = 1
    for i in range(1, k - 1):
        mat[i][i + 1] = mat[i + 1][i] = 3
    gens = [SignedPerm.minus_identity(k)]
    gens += [SignedPerm.transposition(k, i, i + 1) for i in range(k - 1)]
    pres = CoxeterPresentation(tuple(tuple(row) for row in mat))
    return SourceGroup(pres, gens, budget)


def _distinct_images(source: SourceGroup, ttable: TargetTable, *, injective_only: bool, threads: int, work_budget) -> int:
    _, tuples = enumerate_hom_indices(
        source.presentation, ttable, work_budget=work_budget, threads=threads
    )
    e = ttable.identity
    images: set[frozenset] = set()
    for tup in tuples:
        vals = evaluate_hom(tup, source, ttable)
        if injective_only and any(v == e for k, v in enumerate(vals) if k):
            continue
        images.add(frozenset(vals))
    return len(images)


def subgroup_census(
    target,
    pattern: str,
    *,
    order_budget: int = DEFAULT_ORDER_BUDGET,
    work_budget: int | None = None,
    threads: int = 1,
) -> int:
    """Count subgroups of the target matching a pattern.

    Patterns: ``C2``, ``Klein4``, ``Sym(k)``, ``C2xSym(k)``, ``Dihedral(p)``.
    Isomorphic-subgroup patterns are counted as deduplicated image sets of
    injective homomorphisms; C2 and Klein4 come from involution arithmetic.
    """
    m = _PATTERN_RE.match(pattern)
    if not m:
        raise ValueError(f"unknown census pattern {pattern!r}")
    ttable = _as_target(target, order_budget)
    if work_budget is None:
        work_budget = work_budget_from_env()
    if pattern == "C2":
        return ttable.involution_count()
    if pattern == "Klein4":
        cand = ttable.involution_or_identity
        cols = ttable.cols
        e = ttable.identity
        pairs = 0
        for x in cand:
            if x == e:
                continue
            for y in cand:
                if y == e or y == x:
                    continue
                if cols[y][x] == cols[x][y]:
                    pairs += 1
        if pairs % 6:
            raise AssertionError("commuting involution pairs not divisible by 6")
        return pairs // 6
    if m.group(2):
        k = int(m.group(2))
        source = SourceGroup.from_group(GroupId("A", k - 1), budget=order_budget)
    elif m.group(3):
        k = int(m.group(3))
        source = _c2_x_sym_source(k, budget=order_budget)
    else:
        p = int(m.group(4))
        source = SourceGroup.from_group(GroupId("I2", p), budget=order_budget)
    return _distinct_images(
        source, ttable, injective_only=True, threads=threads, work_budget=work_budget
    )


# ---------------------------------------------------------------------------
# verification


def _check(name: str, formula, oracle) -> CheckResult:
    return CheckResult(name=name, formula=str(formula), oracle=str(oracle), passed=formula == oracle)


def _odd_primes_up_to(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1, 2) if counting.is_odd_prime(p)]


def estimate_endo_work(gid: GroupId) -> int:
    """Pessimistic bound for the endomorphism search, from closed forms only."""
    candidates = counting.involution_count(gid) + 1
    return _estimate_work(candidates, coxeter_presentation(gid).num_generators, gid.order())


def verify(
    gid: GroupId,
    *,
    order_budget: int = DEFAULT_ORDER_BUDGET,
    work_budget: int | None = None,
    threads: int = 1,
) -> VerifyReport:
    """Diff every applicable closed form against brute-force enumeration."""
    if work_budget is None:
        work_budget = work_budget_from_env()
    start = time.perf_counter()
    coxeter_generators(gid)  # fail fast on families with no concrete elements
    order = gid.order()
    if order > order_budget:
        raise BudgetExceededError(
            f"{gid.label()} has order {order}, above the order budget {order_budget}"
        )
    bound = estimate_endo_work(gid)
    if bound > work_budget:
        candidates = counting.involution_count(gid) + 1
        g = coxeter_presentation(gid).num_generators
        raise BudgetExceededError(
            f"verify {gid.label()}: search bound {candidates}^{g} exceeds the work "
            f"budget {work_budget}; raise --budget or {BUDGET_ENV_VAR} to force"
        )

    checks: list[CheckResult] = []
    ttable = TargetTable.build(gid, order_budget)
    source = SourceGroup.from_group(gid, budget=order_budget)

    checks.append(
        _check("involution_count", counting.involution_count(gid), ttable.involution_count())
    )

    _, tuples = enumerate_hom_indices(
        coxeter_presentation(gid), ttable, work_budget=work_budget, threads=threads
    )
    checks.append(_check("endo_count", counting.endo_count(gid), len(tuples)))

    classes = kernel_classify(tuples, source, ttable)
    table = tables.endomorphism_table(gid)
    checks.append(_check("kernel_classes", table.kernel_multiset(), kernel_multiset(classes)))

    fam, n = gid.family, gid.param
    if fam == "C":
        checks.append(
            _check(
                "klein_subgroup_count",
                counting.klein_subgroup_count(n),
                subgroup_census(ttable, "Klein4", work_budget=work_budget, threads=threads),
            )
        )
        if n >= 3:
            checks.append(
                _check(
                    "symmetric_subgroup_count",
                    counting.symmetric_subgroup_count(gid),
                    subgroup_census(ttable, f"Sym({n})", work_budget=work_budget, threads=threads),
                )
            )
        checks.append(
            _check(
                "c2_x_symmetric_subgroup_count",
                counting.c2_x_symmetric_subgroup_count(n),
                subgroup_census(ttable, f"C2xSym({n})", work_budget=work_budget, threads=threads),
            )
        )
    if fam == "D":
        checks.append(
            _check(
                "symmetric_subgroup_count",
                counting.symmetric_subgroup_count(gid),
                subgroup_census(ttable, f"Sym({n})", work_budget=work_budget, threads=threads),
            )
        )
    if fam in ("C", "A"):
        rank = n if fam == "C" else n + 1
        for p in _odd_primes_up_to(max(5, rank)):
            _, homs_p = enumerate_hom_indices(
                GroupId("I2", p), ttable, work_budget=work_budget, threads=threads
            )
            checks.append(_check(f"hom_count_I2p(p={p})", counting.hom_count_I2p(p, gid), len(homs_p)))
        for p in _odd_primes_up_to(rank):
            checks.append(
                _check(
                    f"dihedral_subgroup_count(p={p})",
                    counting.dihedral_subgroup_count(p, gid),
                    subgroup_census(ttable, f"Dihedral({p})", work_budget=work_budget, threads=threads),
                )
            )
    if fam == "I2":
        for l in range(2, 13):
            _, homs_l = enumerate_hom_indices(
                GroupId("I2", l), ttable, work_budget=work_budget, threads=threads
            )
            checks.append(
                _check(f"hom_count_dihedral(l={l})", counting.hom_count_dihedral(l, n), len(homs_l))
            )

    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return VerifyReport(
        group=gid.label(),
        checks=checks,
        elapsed_ms=elapsed_ms,
        passed=all(c.passed for c in checks),
    )


def small_suite() -> list[GroupId]:
    """The desk-scale verification suite."""
    ids = [GroupId("I2", m) for m in range(2, 13)]
    ids += [GroupId("A", n) for n in (2, 3, 4)]
    ids += [GroupId("C", n) for n in (2, 3, 4)]
    ids += [GroupId("D", n) for n in (4, 5)]
    return ids


def stretch_suite() -> list[GroupId]:
    """Optional extras behind a flag: groups with slower or optional support."""
    return [GroupId("H3")]
