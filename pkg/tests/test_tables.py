import pytest

from reflect_endo import counting
from reflect_endo.groups import GroupId
from reflect_endo.tables import (
    EndoTableRow,
    HomTable,
    endomorphism_table,
    hom_table_I2p,
    table_from_csv,
    table_to_csv,
    table_to_json_dict,
)


def test_c5_table():
    t = endomorphism_table(GroupId("C", 5))
    assert len(t.rows) == 9
    assert t.total == 33664
    assert [r.kernel_index for r in t.rows] == [1, 2, 2, 2, 4, 120, 240, 1920, 3840]


def test_c4_table_from_constants():
    t = endomorphism_table(GroupId("C", 4))
    assert len(t.rows) == 11
    assert t.total == 6496
    e_column = [r.e for r in t.rows]
    assert e_column == [1, 75, 75, 75, 1662, 384, 1152, 768, 1536, 0, 768]


def test_i2_9_table():
    t = endomorphism_table(GroupId("I2", 9))
    assert [(r.kernel_label, r.kernel_index, r.e) for r in t.rows] == [
        ("I_2(9)", 1, 1),
        ("<r>", 2, 9),
        ("<r^3>", 6, 18),
        ("{1}", 18, 54),
    ]
    assert t.total == 82


def test_i2_even_layout():
    t = endomorphism_table(GroupId("I2", 6))
    labels = [r.kernel_label for r in t.rows]
    assert labels == ["I_2(6)", "<r^2,s>", "<r^2,rs>", "<r>", "<r^2>", "<r^3>", "{1}"]
    assert [r.e for r in t.rows] == [1, 7, 7, 7, 18, 12, 12]
    assert t.total == 64
    # the three index-2 kernels all map onto order-2 subgroups, z = m + 1
    index2 = [r for r in t.rows if r.kernel_index == 2]
    assert all(r.z == 7 for r in index2)


def test_a_family_tables():
    t = endomorphism_table(GroupId("A", 2))
    assert [(r.kernel_index, r.e) for r in t.rows] == [(1, 1), (2, 3), (6, 6)]
    t1 = endomorphism_table(GroupId("A", 1))
    assert t1.total == 2
    assert len(t1.rows) == 2


def test_c2_table():
    t = endomorphism_table(GroupId("C", 2))
    assert t.total == 36
    assert [(r.kernel_index, r.e) for r in t.rows] == [
        (1, 1), (2, 5), (2, 5), (2, 5), (4, 12), (8, 8),
    ]


def test_d_family_tables():
    t5 = endomorphism_table(GroupId("D", 5))
    assert len(t5.rows) == 4
    assert t5.total == 3996
    t8 = endomorphism_table(GroupId("D", 8))
    assert len(t8.rows) == 5
    assert any(r.aut is None and r.z == 0 for r in t8.rows)


def test_row_invariants_across_supported_ids():
    gids = (
        [GroupId("A", n) for n in range(1, 51)]
        + [GroupId("C", n) for n in range(2, 51)]
        + [GroupId("D", n) for n in range(4, 51)]
        + [GroupId("I2", m) for m in range(2, 51)]
        + list(counting.EXCEPTIONAL_IDS)
    )
    for gid in gids:
        t = endomorphism_table(gid)
        assert t.total == counting.endo_count(gid)
        indices = [r.kernel_index for r in t.rows]
        assert indices == sorted(indices)
        for r in t.rows:
            if r.aut is not None:
                assert r.e == r.z * r.aut
            else:
                assert r.z == 0 and r.e == 0


def test_embedded_exceptional_rows_are_structurally_consistent():
    # rows the oracle cannot reach still satisfy every structural identity:
    # index divides the order, the trivial and full kernels bracket the table,
    # the full-group automorphism row matches aut_order, and rows with a
    # two-element quotient carry the involution count
    for gid in counting.EXCEPTIONAL_IDS:
        order = gid.order()
        table = endomorphism_table(gid)
        assert table.rows[0].kernel_index == 1
        assert table.rows[0].z == table.rows[0].aut == table.rows[0].e == 1
        last = table.rows[-1]
        assert last.kernel_index == order
        assert last.kernel_label == "{1}"
        assert last.z == 1 and last.aut == counting.aut_order(gid)
        for row in table.rows:
            assert order % row.kernel_index == 0, (gid, row.kernel_label)
            if row.quotient_label == "C_2":
                assert row.z == counting.involution_count(gid)
                assert row.aut == 1
            if row.quotient_label == "(C_2)^2":
                assert row.aut == 6
        # every index-2 kernel shows up once per index-2 subgroup class listed
        index2 = [r for r in table.rows if r.kernel_index == 2]
        assert all(r.quotient_label == "C_2" for r in index2)


def test_hom_table_I2p_examples():
    t = hom_table_I2p(3, GroupId("C", 3))
    assert [r.e for r in t.rows] == [1, 19, 48]
    assert t.total == 68
    t = hom_table_I2p(5, GroupId("C", 3))
    assert [r.e for r in t.rows] == [1, 19, 0]
    assert t.total == 20
    t = hom_table_I2p(3, GroupId("A", 3))
    assert [r.e for r in t.rows] == [1, 9, 24]
    assert t.total == 34
    assert t.rows[2].aut == 6  # p(p-1)
    with pytest.raises(ValueError):
        hom_table_I2p(4, GroupId("C", 3))


@pytest.mark.parametrize(
    "table",
    [
        endomorphism_table(GroupId("C", 4)),
        endomorphism_table(GroupId("C", 7)),
        endomorphism_table(GroupId("I2", 12)),
        endomorphism_table(GroupId("E8")),
        endomorphism_table(GroupId("D", 6)),
        hom_table_I2p(5, GroupId("C", 9)),
    ],
    ids=lambda t: f"{t.source.label()}->{t.target.label()}",
)
def test_csv_round_trip(table):
    text = table_to_csv(table)
    assert table_from_csv(text) == table


def test_csv_shape():
    text = table_to_csv(endomorphism_table(GroupId("I2", 9)))
    lines = text.strip().splitlines()
    assert lines[0] == "# source,I2:9"
    assert lines[1] == "# target,I2:9"
    assert lines[2] == "kernel_label,kernel_index,quotient_label,z,aut,e"
    assert lines[-1] == "# total,82"


def test_csv_rejects_corrupted_totals():
    text = table_to_csv(endomorphism_table(GroupId("A", 2)))
    with pytest.raises(ValueError):
        table_from_csv(text.replace("# total,10", "# total,11"))


def test_json_dict():
    doc = table_to_json_dict(endomorphism_table(GroupId("A", 3)))
    assert doc["source"] == "A:3"
    assert doc["total"] == 58
    assert doc["rows"][2]["kernel_label"] == "V_4"


def test_row_validation():
    with pytest.raises(ValueError):
        EndoTableRow("K", 2, "Q", 3, 4, 11)
    with pytest.raises(ValueError):
        EndoTableRow("K", 2, "Q", 1, None, 0)
    row = EndoTableRow("K", 2, "Q", 3, 4, 12)
    with pytest.raises(ValueError):
        HomTable(GroupId("A", 2), GroupId("A", 2), (row,), 13)
