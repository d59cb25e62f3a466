"""Endomorphism and homomorphism tables assembled from the closed-form counts.

A table has one row per normal subgroup K of the source, recording the index
of K, the isomorphism type of the quotient, the number Z of subgroups of the
target isomorphic to that quotient, the order of the quotient's automorphism
group, and the product E = Z * |Aut|, which is the number of homomorphisms
with kernel exactly K.  The row sums give the total homomorphism count.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from . import counting
from .groups import GroupId


@dataclass(frozen=True)
class EndoTableRow:
    kernel_label: str
    kernel_index: int
    quotient_label: str
    z: int
    aut: int | None  # None when the quotient is not realized and no order is recorded
    e: int
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.aut is None:
            if self.z != 0 or self.e != 0:
                raise ValueError("rows without an automorphism order must have z = e = 0")
        elif self.e != self.z * self.aut:
            raise ValueError(
                f"row {self.kernel_label}: e = {self.e} but z * aut = {self.z * self.aut}"
            )


@dataclass(frozen=True)
class HomTable:
    source: GroupId
    target: GroupId
    rows: tuple[EndoTableRow, ...]
    total: int

    def __post_init__(self) -> None:
        if self.total != sum(r.e for r in self.rows):
            raise ValueError("table total does not equal the sum of the E column")
        indices = [r.kernel_index for r in self.rows]
        if indices != sorted(indices):
            raise ValueError("rows must be ordered by increasing kernel index")

    def kernel_multiset(self, positive_only: bool = True) -> list[tuple[int, int]]:
        """Sorted (kernel_index, e) pairs; rows with e = 0 are dropped by default."""
        pairs = [(r.kernel_index, r.e) for r in self.rows if r.e or not positive_only]
        return sorted(pairs)


def _table(source: GroupId, target: GroupId, rows) -> HomTable:
    ordered = tuple(sorted(rows, key=lambda r: r.kernel_index))
    return HomTable(source, target, ordered, sum(r.e for r in ordered))


def _row(label, index, quotient, z, aut, e=None, provenance="") -> EndoTableRow:
    if e is None:
        e = 0 if aut is None else z * aut
    return EndoTableRow(label, index, quotient, z, aut, e, provenance)


def _i2_rows(m: int) -> list[EndoTableRow]:
    rows = [_row(f"I_2({m})", 1, "{1}", 1, 1)]
    if m % 2 == 0:
        rows.append(_row("<r^2,s>", 2, "I_2(1)", m + 1, 1))
        rows.append(_row("<r^2,rs>", 2, "I_2(1)", m + 1, 1))
    for d in counting.divisors(m):
        if d == m:
            label = "{1}"
        elif d == 1:
            label = "<r>"
        else:
            label = f"<r^{d}>"
        z = m + 1 if (m % 2 == 0 and d == 1) else m // d
        aut = 1 if d == 1 else 6 if d == 2 else counting.totient(d) * d
        rows.append(_row(label, 2 * d, f"I_2({d})", z, aut))
    return rows


def _a_rows(n: int) -> list[EndoTableRow]:
    if n == 1:
        # the order-2 group: the quotient-by-everything row is the sign row
        return [_row("A_1", 1, "{1}", 1, 1), _row("{1}", 2, "A_1", 1, 1)]
    gid = GroupId("A", n)
    v = counting.involution_count(gid)
    aut = counting.aut_order(gid)
    return [
        _row(f"A_{n}", 1, "{1}", 1, 1),
        _row(f"A_{n}^+", 2, "C_2", v, 1),
        _row("{1}", math.factorial(n + 1), f"A_{n}", 1, aut),
    ]


def _c2_rows() -> list[EndoTableRow]:
    # rank 2: the four-element quotient by the centre collapses onto the
    # Klein-kernel pattern, so the generic nine-row layout does not apply
    v = counting.involution_count(GroupId("C", 2))
    return [
        _row("C_2", 1, "{1}", 1, 1),
        _row("C_2^+", 2, "C_2", v, 1),
        _row("(C_2)_1", 2, "C_2", v, 1),
        _row("+C_2", 2, "C_2", v, 1),
        _row("{±1}", 4, "(C_2)^2", counting.klein_subgroup_count(2), 6),
        _row("{1}", 8, "C_2", 1, counting.aut_order(GroupId("C", 2))),
    ]


def _c_rows(n: int) -> list[EndoTableRow]:
    gid = GroupId("C", n)
    v = counting.involution_count(gid)
    zk = counting.klein_subgroup_count(n)
    nf = math.factorial(n)
    w = (1 << n) * nf
    aut = counting.aut_order(gid)
    rows = [
        _row(f"C_{n}", 1, "{1}", 1, 1),
        _row(f"C_{n}^+", 2, "C_2", v, 1),
        _row(f"(C_{n})_1", 2, "C_2", v, 1),
        _row(f"+C_{n}", 2, "C_2", v, 1),
        _row(f"(C_{n})_1^+", 4, "(C_2)^2", zk, 6),
        _row("N", nf, f"S_{n}", 1 << n, nf),
        _row("N^+", 2 * nf, f"C_2 x S_{n}", 1 << (n - 1), 2 * nf),
    ]
    if n % 2:
        rows.append(_row("{±1}", w // 2, f"C_{n}/{{±1}}", 2, w // 2))
    else:
        rows.append(_row("{±1}", w // 2, f"C_{n}/{{±1}}", 0, None))
    rows.append(_row("{1}", w, f"C_{n}", 1, aut))
    return rows


def _d_rows(n: int) -> list[EndoTableRow]:
    gid = GroupId("D", n)
    v = counting.involution_count(gid)
    w = (1 << (n - 1)) * math.factorial(n)
    rows = [
        _row(f"D_{n}", 1, "{1}", 1, 1),
        _row(f"D_{n}^+", 2, "C_2", v, 1),
        _row("N", math.factorial(n), f"S_{n}", counting.symmetric_subgroup_count(gid), math.factorial(n)),
    ]
    if n % 2 == 0:
        rows.append(_row("{±1}", w // 2, f"D_{n}/{{±1}}", 0, None))
    rows.append(_row("{1}", w, f"D_{n}", 1, counting.aut_order(gid)))
    return rows


def endomorphism_table(gid: GroupId) -> HomTable:
    """The endomorphism table of gid, rows ordered by increasing kernel index."""
    fam, n = gid.family, gid.param
    if fam == "I2":
        rows = _i2_rows(n)
    elif gid in counting.EXCEPTIONAL_IDS:
        rows = counting.exceptional_constants(gid)
    elif fam == "A":
        rows = _a_rows(n)
    elif fam == "C":
        rows = _c2_rows() if n == 2 else _c_rows(n)
    elif fam == "D":
        rows = _d_rows(n)
    else:
        raise ValueError(f"no endomorphism table for {gid.label()}")
    table = _table(gid, gid, rows)
    if table.total != counting.endo_count(gid):
        raise AssertionError(
            f"table total {table.total} disagrees with endo_count({gid.label()})"
        )
    return table


def hom_table_I2p(p: int, target: GroupId) -> HomTable:
    """Homomorphism table from the dihedral group of order 2p (p an odd prime)."""
    if not counting.is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    v = counting.involution_count(target)
    z1 = counting.dihedral_subgroup_count(p, target)
    rows = [
        _row(f"I_2({p})", 1, "{1}", 1, 1),
        _row("<r>", 2, "C_2", v, 1),
        _row("{1}", 2 * p, f"I_2({p})", z1, p * (p - 1)),
    ]
    table = _table(GroupId("I2", p), target, rows)
    if table.total != counting.hom_count_I2p(p, target):
        raise AssertionError("table total disagrees with the closed-form count")
    return table


# ---------------------------------------------------------------------------
# serialization

CSV_COLUMNS = ("kernel_label", "kernel_index", "quotient_label", "z", "aut", "e")


def table_to_csv(table: HomTable) -> str:
    buf = io.StringIO()
    buf.write(f"# source,{table.source.spec()}\n")
    buf.write(f"# target,{table.target.spec()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in table.rows:
        writer.writerow(
            [
                r.kernel_label,
                r.kernel_index,
                r.quotient_label,
                r.z,
                "N/A" if r.aut is None else r.aut,
                r.e,
            ]
        )
    buf.write(f"# total,{table.total}\n")
    return buf.getvalue()


def table_from_csv(text: str) -> HomTable:
    source = target = None
    total = None
    body = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(",")
            if key == "source":
                source = GroupId.parse(value)
            elif key == "target":
                target = GroupId.parse(value)
            elif key == "total":
                total = int(value)
            continue
        body.append(line)
    if source is None or target is None:
        raise ValueError("csv table is missing source/target metadata")
    reader = csv.reader(body)
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected csv header {header}")
    rows = []
    for rec in reader:
        label, index, quotient, z, aut, e = rec
        rows.append(
            EndoTableRow(
                kernel_label=label,
                kernel_index=int(index),
                quotient_label=quotient,
                z=int(z),
                aut=None if aut == "N/A" else int(aut),
                e=int(e),
            )
        )
    table = HomTable(source, target, tuple(rows), sum(r.e for r in rows))
    if total is not None and total != table.total:
        raise ValueError(f"declared total {total} does not match row sum {table.total}")
    return table


def table_to_json_dict(table: HomTable) -> dict:
    return {
        "source": table.source.spec(),
        "target": table.target.spec(),
        "rows": [
            {
                "kernel_label": r.kernel_label,
                "kernel_index": r.kernel_index,
                "quotient_label": r.quotient_label,
                "z": r.z,
                "aut": r.aut,
                "e": r.e,
            }
            for r in table.rows
        ],
        "total": table.total,
    }
