import functools
import random
import sys
import time
from collections import Counter
from itertools import islice, permutations
from pathlib import Path
from typing import Any, Callable, Optional

import click
from pydantic import BaseModel, Field, validator

import simplexdesigns
from simplexdesigns import setting
from simplexdesigns.cliques.classification import TYPE_BY_INDEX, classify_clique
from simplexdesigns.cliques.clique import Clique, center_points
from simplexdesigns.cliques.graph import build_graph, enumerate_maximal_cliques
from simplexdesigns.combinatorics import ElementSet
from simplexdesigns.constructions import (
    canonical_planes,
    canonical_product,
    decompose,
    hyperplane_complement_clique,
    non_centered_clique,
    product_census,
    product_clique,
    random_product,
)
from simplexdesigns.designs.design import clique_from_design, design_from_clique, load_design, write_design
from simplexdesigns.designs.groups import (
    automorphism_group,
    block_orbit_count,
    flag_orbit_count,
    is_point_primitive,
    point_orbit_count,
)
from simplexdesigns.designs.hadamard import to_hadamard
from simplexdesigns.designs.isomorphism import find_isomorphism
from simplexdesigns.exceptions import AssumptionError, ParseError, SimplexDesignsError
from simplexdesigns.fano import FanoBijection, bijection_index, canonical_plane, equivalence_classes, index_spectrum
from simplexdesigns.geometry import geometry_for, is_singular_subspace
from simplexdesigns.logger import configure_logging, logger

DEFAULT_FIXTURE_DIR = Path(__file__).parent / "data"
FIXTURE_FILES = {
    "c1": "c1.txt",
    "c2": "c2.txt",
    "c3": "c3.txt",
    "c4": "c4.txt",
    "non-centered": "non_centered.txt",
}
CONSTRUCTIONS: dict[str, Callable[[], Clique]] = {
    "c1": lambda: canonical_product(7),
    "c2": lambda: canonical_product(3),
    "c3": lambda: canonical_product(1),
    "c4": lambda: canonical_product(0),
    "non-centered": non_centered_clique,
    "hyperplane-complement": lambda: hyperplane_complement_clique(4),
}


class Report(BaseModel):
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    timing: Optional[float] = None

    @validator("timing")
    def timing_not_negative(cls, v):
        if v is not None and v < 0:
            raise ValueError(f"timing {v!r} is negative")
        return v

    def render(self, fmt: str) -> str:
        sections = {"parameters": self.parameters, "results": self.results}
        if self.timing is not None:
            sections["timing"] = round(self.timing, 3)
        if fmt == "kv":
            lines = [f"command={self.command}"]
            for name, value in sections.items():
                lines.extend(_flatten(name, value))
        else:
            lines = [f"command: {self.command}"]
            for name, value in sections.items():
                lines.extend(_indent(name, value, 0))
        return "\n".join(lines)


def _flatten(prefix: str, value: Any) -> list[str]:
    if isinstance(value, dict):
        return [line for key, inner in value.items() for line in _flatten(f"{prefix}.{key}", inner)]
    if isinstance(value, list):
        return [line for i, inner in enumerate(value) for line in _flatten(f"{prefix}.{i}", inner)]
    return [f"{prefix}={value}"]


def _indent(key: Any, value: Any, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        lines = [f"{pad}{key}:"]
        for inner_key, inner in value.items():
            lines.extend(_indent(inner_key, inner, depth + 1))
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{pad}{key}:"] + [f"{pad}  {v}" for v in value]
        lines = [f"{pad}{key}:"]
        for i, inner in enumerate(value):
            lines.extend(_indent(i, inner, depth + 1))
        return lines
    return [f"{pad}{key}: {value}"]


EXIT_CODES = (
    (ParseError, 2),
    (AssumptionError, 3),
    (SimplexDesignsError, 1),
)


def reporting(command: Callable[..., Report]) -> Callable[..., None]:
    """Run a report-producing command, print it and map library errors onto exit codes."""

    @click.option("--format", "fmt", type=click.Choice(["text", "kv"]), default=None)
    @click.option("--timing", is_flag=True, default=False, help="Include wall-clock timing in the report.")
    @functools.wraps(command)
    def wrapper(*args, fmt, timing, **kwargs):
        fmt = fmt or setting("cli.format", "text")
        started = time.perf_counter()
        try:
            report = command(*args, **kwargs)
        except SimplexDesignsError as exc:
            code = next(code for kind, code in EXIT_CODES if isinstance(exc, kind))
            logger.error(f"{type(exc).__name__}: {exc}")
            click.echo(f"error: {exc}", err=True)
            sys.exit(code)

        if timing:
            report.timing = time.perf_counter() - started
        click.echo(report.render(fmt))

    return wrapper


def _fixture_dir() -> Path:
    ctx = click.get_current_context()
    configured = (ctx.obj or {}).get("fixture_dir") or setting("cli.fixture_dir")
    return Path(configured) if configured else DEFAULT_FIXTURE_DIR


def _resolve(name: str) -> Path:
    """A path as given, or a fixture name (``c2``, ``non_centered.txt``) inside the fixture directory."""
    path = Path(name)
    if path.exists():
        return path
    fixture = _fixture_dir() / FIXTURE_FILES.get(name, name)
    if fixture.exists():
        return fixture
    raise ParseError(f"no file or fixture named {name!r} (fixture directory {_fixture_dir()})")


def _parse_set(text: Optional[str], n: int) -> Optional[ElementSet]:
    return ElementSet.parse(text, n) if text is not None else None


@click.group()
@click.option("--conf", type=click.Path(exists=True), default=None, help="TOML config file.")
@click.option("--fixture-dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option(
    "--log-level",
    type=click.Choice(["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help="Override SIMPLEXDESIGNS_LOG_LEVEL for this run.",
)
@click.version_option(simplexdesigns.__version__)
@click.pass_context
def cli(ctx, conf, fixture_dir, log_level):
    if log_level:
        configure_logging(log_level)
    if conf:
        simplexdesigns.parse_config(conf)
    ctx.obj = {"fixture_dir": fixture_dir}


@cli.command()
@click.argument("kind", type=click.Choice(list(CONSTRUCTIONS)))
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help="Write the matrices here.")
@click.option("--hadamard-style", type=click.Choice(["sign", "binary"]), default="sign")
@reporting
def construct(kind, out_dir, hadamard_style):
    logger.info(f"Constructing {kind}")
    clique = CONSTRUCTIONS[kind]()
    design = design_from_clique(clique)
    hadamard = to_hadamard(design)
    result = classify_clique(clique)

    if out_dir:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        write_design(design, target / f"{kind}.txt")
        (target / f"{kind}.hadamard.txt").write_text(hadamard.render(hadamard_style))

    return Report(
        command="construct",
        parameters={"kind": kind, "hadamard_style": hadamard_style},
        results={
            "tag": result.tag.value,
            "index": result.index if result.index is not None else "none",
            "center_count": len(result.centers),
            "centers": [str(c) for c in result.centers],
            "lines_inside": result.lines,
            "planes_inside": result.planes,
            "points": [str(p) for p in clique],
            "incidence": [p.as_row() for p in clique],
            "hadamard": hadamard.render(hadamard_style).split(),
        },
    )


@cli.command()
@click.argument("source")
@click.option("--skip-group", is_flag=True, default=False, help="Do not compute the automorphism group.")
@reporting
def classify(source, skip_group):
    path = _resolve(source)
    logger.info(f"Classifying {path}")
    design = load_design(path)
    clique = clique_from_design(design)
    result = classify_clique(clique)

    results: dict[str, Any] = {
        "tag": result.tag.value,
        "index": result.index if result.index is not None else "none",
        "center_count": len(result.centers),
        "centers": [str(c) for c in result.centers],
        "lines_inside": result.lines,
        "planes_inside": result.planes,
    }
    if not skip_group:
        group = automorphism_group(design, materialize=False)
        primitive = is_point_primitive(group)
        results.update(
            {
                "group_order": group.order,
                "point_orbits": point_orbit_count(design, group),
                "block_orbits": block_orbit_count(design, group),
                "flag_orbits": flag_orbit_count(design, group),
                "point_primitive": "n/a" if primitive is None else primitive,
            }
        )
    return Report(command="classify", parameters={"source": str(path)}, results=results)


@cli.command()
@click.argument("first")
@click.argument("second")
@reporting
def isomorphic(first, second):
    paths = _resolve(first), _resolve(second)
    d1, d2 = load_design(paths[0]), load_design(paths[1])
    witness = find_isomorphism(d1, d2)
    if witness is not None and not d1.relabel(witness).same_blocks(d2):
        raise AssumptionError(f"search returned {witness}, which does not map the blocks across")

    return Report(
        command="isomorphic",
        parameters={"first": str(paths[0]), "second": str(paths[1])},
        results={
            "isomorphic": witness is not None,
            "witness": str(witness) if witness is not None else "none (search exhausted)",
        },
    )


@cli.command()
@click.option("--center", default=None, help="Center point in set notation, default {8,...,15}.")
@click.option("--residue", default=None, help="The 7-subset Z of the center, default the center minus its maximum.")
@click.option("--all-planes", is_flag=True, default=False, help="Use all 30 x 30 pairs of planes.")
@click.option("--limit", type=int, default=None, help="Bijections per plane pair.")
@click.option("--verify", is_flag=True, default=False, help="Classify every product and compare with its index.")
@reporting
def census(center, residue, all_planes, limit, verify):
    limit = limit if limit is not None else setting("census.limit")
    summary = product_census(_parse_set(center, 15), _parse_set(residue, 15), all_planes=all_planes, limit=limit)
    results: dict[str, Any] = {
        "plane_pairs": summary.plane_pairs,
        "bijections": summary.bijections,
        "distinct_products": summary.distinct_products,
        "index_tally": summary.index_tally,
        "class_tally": {TYPE_BY_INDEX[i].value: count for i, count in summary.index_tally.items()},
        "singular_index_seven": summary.singular_full_index,
    }

    if not all_planes and limit is None:
        x_plane, y_plane = _census_planes(summary.center, summary.residue_set)
        spectrum = index_spectrum(x_plane, y_plane)
        if spectrum != summary.index_tally:
            raise AssumptionError(f"census tally {summary.index_tally} differs from the index spectrum {spectrum}")
        results["matches_spectrum"] = True

    if verify:
        results["verified"] = _verify_census(summary.center, summary.residue_set, limit)

    return Report(
        command="census",
        parameters={
            "center": str(summary.center),
            "residue": str(summary.residue_set),
            "all_planes": all_planes,
            "limit": limit if limit is not None else "none",
        },
        results=results,
    )


def _census_planes(center: ElementSet, residue: ElementSet):
    outside = ElementSet(((1 << 16) - 2) & ~center.bits, 15)
    return canonical_plane(outside), canonical_plane(residue)


def _verify_census(center: ElementSet, residue: ElementSet, limit: Optional[int]) -> int:
    """Full classification of canonical-pair products; returns how many were checked."""
    x_plane, y_plane = _census_planes(center, residue)
    geometry = geometry_for(4)
    checked = 0
    for mapping in islice(permutations(range(7)), limit):
        delta = FanoBijection(x_plane, y_plane, mapping)
        clique = product_clique(geometry, center, x_plane.points, y_plane.points, mapping)
        expected = TYPE_BY_INDEX[bijection_index(delta)]
        if classify_clique(clique).tag is not expected:
            raise AssumptionError(f"product over {mapping} does not classify as {expected.value}")
        checked += 1
    return checked


@cli.command(name="enumerate")
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--through", type=int, default=None, help="Only cliques containing this vertex index.")
@click.option("--limit", type=int, default=None)
@click.option("--sorted", "sorted_output", is_flag=True, default=False, help="Emit cliques in lexicographic order.")
@reporting
def enumerate_cliques(k, through, limit, sorted_output):
    geometry = geometry_for(k)
    graph = build_graph(geometry)
    cliques = [
        Clique.from_vertices(geometry, vertices)
        for vertices in enumerate_maximal_cliques(graph, limit=limit, through=through, sorted_output=sorted_output)
    ]
    sizes = Counter(len(c) for c in cliques)
    return Report(
        command="enumerate",
        parameters={"k": k, "through": through if through is not None else "none", "limit": limit or "none"},
        results={
            "vertices": len(graph),
            "degree": graph.degree(0),
            "cliques": len(cliques),
            "sizes": dict(sorted(sizes.items())),
            "all_singular": all(is_singular_subspace(geometry, c) for c in cliques),
            "vertex_lists": [" ".join(str(v) for v in c.vertices) for c in cliques],
        },
    )


@cli.command()
@reporting
def spectrum():
    x_plane, y_plane = canonical_planes()
    classes = equivalence_classes(x_plane, y_plane)
    class_indices = []
    for members in classes:
        indices = {bijection_index(d) for d in members}
        if len(indices) != 1:
            raise AssumptionError(f"an equivalence class mixes indices {sorted(indices)}")
        class_indices.append(indices.pop())
    return Report(
        command="spectrum",
        results={
            "spectrum": index_spectrum(x_plane, y_plane),
            "classes": len(classes),
            "class_sizes": {index: len(members) for index, members in zip(class_indices, classes)},
        },
    )


@cli.command()
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@reporting
def roundtrip(trials, seed):
    """Random products decomposed again at their center must give back their ingredients."""
    rng = random.Random(seed)
    for _ in range(trials):
        sample = random_product(rng)
        parts = decompose(sample.clique, sample.center, sample.residue_set)
        expected = {x: sample.delta(x) for x in sample.delta.source.points}
        if parts.pairs() != expected or sample.center not in center_points(sample.clique):
            raise AssumptionError(f"round trip failed for center {sample.center}")
    return Report(command="roundtrip", parameters={"trials": trials, "seed": seed}, results={"passed": trials})
