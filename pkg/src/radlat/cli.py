"""Command-line front end.

Exit codes: 0 all checks passed, 1 a counterexample was found, 2 bad input.
Outputs are deterministic for a fixed seed; JSON reports carry no timing.
"""

from __future__ import annotations

import json
import sys

import click

from . import cstar as cs
from . import radmap as rm
from . import relcalc as rc
from . import smallideal as sm
from .errors import RadlatError
from .files import parse_lattice_file, parse_relation_file, to_dot
from .fuzz import RunConfig
from .properties import format_property, parse_property
from .report import VerdictReport
from .suites import SUITES, run_suite

PASS_EXIT, COUNTEREXAMPLE_EXIT, INPUT_EXIT = 0, 1, 2


def _fail_input(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(INPUT_EXIT)


def _load_lattice(path):
    try:
        with open(path) as handle:
            return parse_lattice_file(handle.read())
    except OSError as exc:
        _fail_input(f"{path}: {exc.strerror}")
    except RadlatError as exc:
        _fail_input(f"{path}: {exc}")


def _emit(report: VerdictReport, fmt, output):
    text = report.to_json_lines() if fmt == "json" else report.to_text()
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Radicals of relations on finite lattices, with a block-model layer."""


@main.group()
def lattice():
    """Lattice file operations."""


@lattice.command("check")
@click.argument("path", type=click.Path())
def lattice_check(path):
    """Validate a lattice file."""
    lat = _load_lattice(path)
    click.echo(f"lattice {lat.name}: {lat.n} elements, bottom={lat.bottom}, top={lat.top}")
    sys.exit(PASS_EXIT)


@main.group()
def relation():
    """Relation file operations."""


@relation.command("analyze")
@click.argument("lattice_path", type=click.Path())
@click.argument("relation_path", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--output", type=click.Path(), default=None)
def relation_analyze(lattice_path, relation_path, fmt, output):
    """Classify a relation and run the structural coincidence checks."""
    lat = _load_lattice(lattice_path)
    try:
        with open(relation_path) as handle:
            rel = parse_relation_file(handle.read(), lat)
    except OSError as exc:
        _fail_input(f"{relation_path}: {exc.strerror}")
    except RadlatError as exc:
        _fail_input(f"{relation_path}: {exc}")
    rep = VerdictReport("relation-analyze")
    for label, chk in (
        ("join-shift", rc.is_h_relation(rel)),
        ("meet-shift", rc.is_dual_h_relation(rel)),
        ("transitive", rc.is_transitive(rel)),
        ("series-order", rc.is_r_order(rel)),
        ("dual-series-order", rc.is_dual_r_order(rel)),
    ):
        verdict = "yes" if chk.ok else f"no (witness {chk.witness})"
        rep.add(label, f"{label}: {verdict}", True)
    rep.add("radicals", f"radical candidates: {sorted(rc.find_radicals(rel))}", True)
    rep.add("dual-radicals", f"dual radical candidates: {sorted(rc.find_dual_radicals(rel))}", True)
    rep.extend(rc.check_theorem_inf(rel), prefix="inf/")
    _emit(rep, fmt, output)
    sys.exit(PASS_EXIT if rep.passed else COUNTEREXAMPLE_EXIT)


@main.group()
def algebra():
    """Block-model algebra operations."""


@algebra.command("radical")
@click.option("--algebra", "algebra_text", required=True, help="block sizes, e.g. 1,2")
@click.option("--property", "property_text", required=True)
@click.option("--direction", type=click.Choice(["right", "left"]), default="right")
def algebra_radical(algebra_text, property_text, direction):
    """Series radical (or dual) of a property relation on one algebra."""
    try:
        alg = cs.ModelAlgebra.parse(algebra_text)
        prop = parse_property(property_text)
        fn = cs.radical_tri if direction == "right" else cs.dual_radical_tri
        ideal = fn(alg, prop)
    except (ValueError, RadlatError) as exc:
        _fail_input(exc)
    click.echo(f"algebra [{alg.format()}] property {format_property(prop)} -> {ideal!r}")
    sys.exit(PASS_EXIT)


@main.group(name="property")
def property_group():
    """Property-expression operations."""


@property_group.command("stability")
@click.option("--property", "property_text", required=True)
@click.option("--max-blocks", default=4, show_default=True)
@click.option("--max-block-size", default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def property_stability(property_text, max_blocks, max_block_size, fmt):
    """Ideal, quotient, and extension stability over a bounded universe."""
    try:
        prop = parse_property(property_text)
        universe = cs.enumerate_algebras(max_blocks, max_block_size)
    except (ValueError, RadlatError) as exc:
        _fail_input(exc)
    rep = VerdictReport("stability")
    for label, fn in (
        ("lower", cs.is_lower_stable),
        ("upper", cs.is_upper_stable),
        ("extension", cs.is_extension_stable),
    ):
        chk = fn(prop, universe)
        rep.add(label, f"{label} stable over {len(universe)} algebras", chk.ok, chk.witness)
    _emit(rep, fmt, None)
    sys.exit(PASS_EXIT)


@main.group()
def small():
    """Small-element analysis."""


@small.command("analyze")
@click.argument("lattice_path", type=click.Path())
@click.option("--dot", "dot_path", type=click.Path(), default=None,
              help="also write a diagram with small elements and the radical highlighted")
def small_analyze(lattice_path, dot_path):
    """Small elements, their join, the series radical, and the coatom meet."""
    lat = _load_lattice(lattice_path)
    analysis = sm.SmallAnalysis.of(lat)
    click.echo(json.dumps(analysis.to_json_obj(), sort_keys=True))
    if dot_path:
        highlights = set(analysis.small_set) | {analysis.r_sm_tri}
        with open(dot_path, "w") as handle:
            handle.write(to_dot(lat, highlights=highlights, title=f"{lat.name}-small"))
    sys.exit(PASS_EXIT)


@main.group()
def export():
    """Diagram export."""


@export.command("dot")
@click.argument("lattice_path", type=click.Path())
@click.option("--highlight", "highlights", multiple=True, type=int)
@click.option("-o", "--output", type=click.Path(), default=None)
def export_dot(lattice_path, highlights, output):
    """Cover-edge diagram of a lattice file."""
    lat = _load_lattice(lattice_path)
    bad = [i for i in highlights if not 0 <= i < lat.n]
    if bad:
        _fail_input(f"highlight {bad[0]} out of range")
    text = to_dot(lat, highlights=highlights)
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(PASS_EXIT)


@main.command("verify")
@click.argument("suite")
@click.option("--fuzz-count", default=200, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--max-blocks", default=4, show_default=True)
@click.option("--max-block-size", default=3, show_default=True)
@click.option("--lattice-size-cap", default=32, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--output", type=click.Path(), default=None)
def verify(suite, fuzz_count, seed, max_blocks, max_block_size, lattice_size_cap, fmt, output):
    """Run a verification suite (or 'all')."""
    if suite != "all" and suite not in SUITES:
        _fail_input(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    config = RunConfig(
        max_blocks=max_blocks,
        max_block_size=max_block_size,
        lattice_size_cap=lattice_size_cap,
        fuzz_seed=seed,
        fuzz_count=fuzz_count,
    )
    rep = run_suite(suite, config)
    _emit(rep, fmt, output)
    sys.exit(PASS_EXIT if rep.passed else COUNTEREXAMPLE_EXIT)


@main.command("radical-map")
@click.argument("map_ref")
@click.option("--max-blocks", default=4, show_default=True)
@click.option("--max-block-size", default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def radical_map_cmd(map_ref, max_blocks, max_block_size, fmt):
    """Check the radical axioms for prop:<expr>:right|left or table:<file>."""
    try:
        universe = cs.enumerate_algebras(max_blocks, max_block_size)
        parts = map_ref.split(":")
        if parts[0] == "prop" and len(parts) == 3:
            mapping = rm.PropertyRadicalMap(parse_property(parts[1]), parts[2])
        elif parts[0] == "table" and len(parts) == 2:
            rules = {}
            with open(parts[1]) as handle:
                for line in handle:
                    line = line.split("#", 1)[0].strip()
                    if not line:
                        continue
                    src, _, dst = line.partition("->")
                    rules[cs.ModelAlgebra.parse(src).blocks] = cs.ModelAlgebra.parse(dst).blocks
            mapping = rm.TableRadicalMap(parts[1], rules)
        else:
            raise RadlatError(f"bad map reference {spec_text!r}")
    except (OSError, ValueError, RadlatError) as exc:
        _fail_input(exc)
    rep = rm.check_axioms(mapping, universe)
    _emit(rep, fmt, None)
    sys.exit(PASS_EXIT if rep.passed else COUNTEREXAMPLE_EXIT)


if __name__ == "__main__":
    main()
