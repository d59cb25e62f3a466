"""Command-line front end.

    reflect-endo count C:3
    reflect-endo count --hom I2:3 C:3
    reflect-endo table C:4 --format csv
    reflect-endo verify --suite small --threads 8 --timestamp off
    reflect-endo figure fig2 --n 4..25

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 budget
exceeded.  All output is deterministic; the only run-dependent bytes are
timestamp/timing metadata, removed by ``--timestamp off``.
"""

from __future__ import annotations

import datetime
import io
import json
import math
import re
import sys
from fractions import Fraction

import click

from . import counting, oracle, stats, tables
from .groups import BudgetExceededError, GroupId, UnsupportedRepresentationError

try:
    from importlib.metadata import version as _pkg_version

    VERSION = _pkg_version("reflect-endo")
except Exception:  # pragma: no cover - source tree without installation
    VERSION = "0.1.0"

_GRAMMAR = "group spec grammar: FAMILY[:param] with FAMILY in A,C,D,I2,H3,H4,F4,E6,E7,E8 (e.g. C:3, I2:7, E8)"


def _parse_group(spec: str) -> GroupId:
    try:
        return GroupId.parse(spec)
    except ValueError as exc:
        raise click.UsageError(f"{exc}; {_GRAMMAR}")


MAX_SWEEP_RANK = 1000


def _parse_range(text: str, flag: str) -> range:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not m:
        raise click.UsageError(f"{flag} must look like A..B, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise click.UsageError(f"{flag}: empty range {text!r}")
    if hi > MAX_SWEEP_RANK:
        raise click.UsageError(f"{flag}: sweeps are capped at rank {MAX_SWEEP_RANK}")
    return range(lo, hi + 1)


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


@click.group()
@click.version_option(VERSION, prog_name="reflect-endo")
def main() -> None:
    """Endomorphism counts, homomorphism tables and random-endomorphism
    statistics for finite reflection groups, with brute-force verification.

    Groups are named FAMILY[:param] with FAMILY one of A, C, D, I2, H3, H4,
    F4, E6, E7, E8; the parameter is the rank for A/C/D and the edge label
    for I2 (examples: A:4, C:3, I2:12, E8).
    """


@main.command("count")
@click.argument("target")
@click.option("--hom", "hom_source", default=None, metavar="I2:P", help="Count homomorphisms from this dihedral group (P an odd prime) instead of endomorphisms.")
@click.option("--hom-dihedral", "hom_dihedral", type=int, default=None, metavar="L", help="Count homomorphisms from the dihedral group of order 2L into a dihedral target.")
def cmd_count(target: str, hom_source: str | None, hom_dihedral: int | None) -> None:
    """Print an exact homomorphism or endomorphism count for TARGET."""
    gid = _parse_group(target)
    if hom_source is not None and hom_dihedral is not None:
        raise click.UsageError("--hom and --hom-dihedral are mutually exclusive")
    try:
        if hom_source is not None:
            src = _parse_group(hom_source)
            if src.family != "I2":
                raise click.UsageError("--hom source must be an I2 group, e.g. I2:5")
            value = counting.hom_count_I2p(src.param, gid)
        elif hom_dihedral is not None:
            if gid.family != "I2":
                raise click.UsageError("--hom-dihedral needs an I2 target, e.g. I2:6")
            value = counting.hom_count_dihedral(hom_dihedral, gid.param)
        else:
            value = counting.endo_count(gid)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(str(value))


@main.command("table")
@click.argument("target")
@click.option("--hom", "hom_source", default=None, metavar="I2:P", help="Emit the homomorphism table from this dihedral group instead.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def cmd_table(target: str, hom_source: str | None, fmt: str) -> None:
    """Emit a homomorphism/endomorphism table for TARGET."""
    gid = _parse_group(target)
    try:
        if hom_source is not None:
            src = _parse_group(hom_source)
            if src.family != "I2":
                raise click.UsageError("--hom source must be an I2 group, e.g. I2:5")
            table = tables.hom_table_I2p(src.param, gid)
        else:
            table = tables.endomorphism_table(gid)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if fmt == "csv":
        click.echo(tables.table_to_csv(table), nl=False)
    else:
        click.echo(json.dumps(tables.table_to_json_dict(table), indent=2, ensure_ascii=False))


@main.command("verify")
@click.argument("target", required=False)
@click.option("--suite", type=click.Choice(["small"]), default=None, help="Run the fixed desk-scale suite instead of a single group.")
@click.option("--stretch", is_flag=True, help="Add the optional slow/optional-representation targets to the suite.")
@click.option("--budget", type=int, default=None, help=f"Work budget for the search (default {oracle.DEFAULT_WORK_BUDGET}, or ${oracle.BUDGET_ENV_VAR}).")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--timestamp", type=click.Choice(["on", "off"]), default="on", show_default=True)
def cmd_verify(target: str | None, suite: str | None, stretch: bool, budget: int | None, threads: int, timestamp: str) -> None:
    """Diff closed-form counts against brute-force enumeration."""
    if (target is None) == (suite is None):
        raise click.UsageError("give exactly one of TARGET or --suite")
    include_timing = timestamp == "on"
    if suite is not None:
        gids = oracle.small_suite()
        if stretch:
            gids += oracle.stretch_suite()
    else:
        gids = [_parse_group(target)]
    reports = []
    try:
        for gid in gids:
            reports.append(oracle.verify(gid, work_budget=budget, threads=threads))
    except UnsupportedRepresentationError as exc:
        raise click.UsageError(str(exc))
    except BudgetExceededError as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        sys.exit(3)
    passed = all(r.passed for r in reports)
    if suite is not None:
        doc = {
            "suite": suite,
            "reports": [r.to_json_dict(include_timing) for r in reports],
            "passed": passed,
        }
    else:
        doc = reports[0].to_json_dict(include_timing)
    if include_timing:
        doc["generated_at"] = _timestamp()
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False))
    sys.exit(0 if passed else 1)


def _fig1_rows(n_range: range) -> tuple[list[str], list[list[str]]]:
    header = ["n", "image_order", "count", "proportion_num", "proportion_den", "proportion_float"]
    rows = []
    for n in n_range:
        dist = stats.image_order_distribution(GroupId("C", n))
        for order, count in dist.support:
            prop = Fraction(count, dist.total)
            rows.append(
                [str(n), str(order), str(count), str(prop.numerator), str(prop.denominator), str(float(prop))]
            )
    return header, rows


def _fig2_rows(n_range: range) -> tuple[list[str], list[list[str]]]:
    from decimal import ROUND_HALF_EVEN, Decimal, localcontext

    header = ["n", "num", "den", "prob_float"]
    rows = []
    for n in n_range:
        p = stats.prob_centre_in_kernel(GroupId("C", n))
        with localcontext() as ctx:
            ctx.prec = 30
            ctx.rounding = ROUND_HALF_EVEN
            dec = (Decimal(p.numerator) / Decimal(p.denominator)).quantize(Decimal("0.00001"))
        rows.append([str(n), str(p.numerator), str(p.denominator), str(dec)])
    return header, rows


def _fig3_rows(n_range: range, p_max: int) -> tuple[list[str], list[list[str]]]:
    header = ["p", "n", "count", "log10_count"]
    rows = []
    primes = [p for p in range(3, p_max + 1) if counting.is_odd_prime(p)]
    for p in primes:
        for n in n_range:
            count = counting.hom_count_I2p(p, GroupId("C", n))
            rows.append([str(p), str(n), str(count), str(math.log10(count))])
    return header, rows


@main.command("report")
@click.argument("family", type=click.Choice(["A", "C", "D"]))
@click.option("--n", "n_spec", default="7..30", show_default=True, metavar="A..B")
@click.option("--quantity", default=None, help="Restrict to one quantity name.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def cmd_report(family: str, n_spec: str, quantity: str | None, fmt: str) -> None:
    """Convergence tables: exact value, float, and reference limit per rank."""
    n_range = _parse_range(n_spec, "--n")
    lo = {"A": 1, "C": 2, "D": 4}[family]
    if n_range.start < lo:
        raise click.UsageError(f"family {family} needs n >= {lo}")
    report = stats.asymptotic_report(family, n_range)
    if quantity is not None:
        if quantity not in report:
            raise click.UsageError(
                f"unknown quantity {quantity!r}; available: {', '.join(sorted(report))}"
            )
        report = {quantity: report[quantity]}
    header = ["quantity", "n", "num", "den", "value_float", "limit_num", "limit_den"]
    rows = []
    for name in report:
        for n, exact, value, limit in report[name]:
            rows.append(
                [
                    name,
                    str(n),
                    str(exact.numerator),
                    str(exact.denominator),
                    str(value),
                    str(limit.numerator),
                    str(limit.denominator),
                ]
            )
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(r) for r in rows]
        click.echo("\n".join(lines))
    else:
        click.echo(json.dumps({"family": family, "columns": header, "rows": rows}, indent=2))


@main.command("figure")
@click.argument("figure_id", type=click.Choice(["fig1", "fig2", "fig3"]))
@click.option("--n", "n_spec", default=None, metavar="A..B", help="Rank range (defaults: fig1 3..25, fig2 4..25, fig3 3..50).")
@click.option("--p-max", type=int, default=61, show_default=True, help="Largest dihedral prime for fig3.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False, writable=True), default=None, help="Write to a file instead of stdout.")
@click.option("--timestamp", type=click.Choice(["on", "off"]), default="on", show_default=True)
def cmd_figure(figure_id: str, n_spec: str | None, p_max: int, fmt: str, out_path: str | None, timestamp: str) -> None:
    """Export the dataset behind one of the figures."""
    defaults = {"fig1": "3..25", "fig2": "4..25", "fig3": "3..50"}
    n_range = _parse_range(n_spec or defaults[figure_id], "--n")
    if n_range.start < 2:
        raise click.UsageError("figure ranges need n >= 2")
    if figure_id == "fig1":
        header, rows = _fig1_rows(n_range)
        params = f"n={n_range.start}..{n_range.stop - 1}"
    elif figure_id == "fig2":
        header, rows = _fig2_rows(n_range)
        params = f"n={n_range.start}..{n_range.stop - 1}"
    else:
        if p_max < 3:
            raise click.UsageError("--p-max must be at least 3")
        header, rows = _fig3_rows(n_range, p_max)
        params = f"p=3..{p_max},n={n_range.start}..{n_range.stop - 1}"

    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# figure,{figure_id}\n")
        buf.write(f"# params,{params}\n")
        buf.write(f"# version,{VERSION}\n")
        if timestamp == "on":
            buf.write(f"# generated_at,{_timestamp()}\n")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(row) + "\n")
        payload = buf.getvalue()
    else:
        doc = {
            "figure": figure_id,
            "params": params,
            "version": VERSION,
            "columns": header,
            "rows": rows,
        }
        if timestamp == "on":
            doc["generated_at"] = _timestamp()
        payload = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        click.echo(f"wrote {out_path}")
    else:
        click.echo(payload, nl=False)


if __name__ == "__main__":
    main()
