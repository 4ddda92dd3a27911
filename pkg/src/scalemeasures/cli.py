"""Command line workbench around the library.

Paths accept .cxt cross tables or .json context documents.  Commands
print a short human summary to stdout; tab-delimited listings and
figures go to files when requested.  Exit status: 0 on success, 1 when a
checked property fails to hold, 2 on usage or parse problems.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import explore as xp
from .errors import (BoundExceededError, FcaError, FormatError,
                     RejectedCounterexampleError)
from .export import lattice_graph, lattice_to_dot
from .families import extent_family
from .formats import (assignment_from_doc, context_to_doc, load_context,
                      load_json, script_from_doc, write_cxt)
from .ideal import (count_meet_irreducibles, join_irreducibles,
                    meet_irreducibles, property_suite)
from .importance import MEASURES, rank_concepts
from .scales import (ScaleMeasure, canonical_representation,
                     conjunctive_normalform)


def _load(path: str, require_attributes: bool = True):
    try:
        return load_context(path, require_attributes=require_attributes)
    except FormatError as exc:
        raise click.UsageError(str(exc))


def _measure_from_args(base_path: str, scale_path: str,
                       assignment_path: str | None) -> ScaleMeasure:
    base = _load(base_path)
    scale = _load(scale_path, require_attributes=False)
    assignment = None
    if assignment_path:
        try:
            assignment = assignment_from_doc(load_json(assignment_path))
        except FormatError as exc:
            raise click.UsageError(str(exc))
    try:
        return ScaleMeasure(base, scale, assignment)
    except FcaError as exc:
        raise click.UsageError(str(exc))


def _write_rows(path: str, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, dialect="excel-tab")
        writer.writerow(header)
        writer.writerows(rows)


@click.group()
@click.version_option(package_name="scalemeasures")
def main() -> None:
    """Concept lattices, scale-measures, and scale exploration."""


# ---------------------------------------------------------------------------


@main.command()
@click.argument("context_path")
@click.option("--list", "list_them", is_flag=True,
              help="List every concept instead of only counting.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.option("--tsv", "tsv_path", type=click.Path(), default=None,
              help="Write extent/intent rows to a tab-delimited file.")
def concepts(context_path: str, list_them: bool, as_json: bool,
             tsv_path: str | None) -> None:
    """Count or list the formal concepts of a context."""
    ctx = _load(context_path)
    found = ctx.concepts()
    if as_json:
        doc = {"context": ctx.name, "count": len(found),
               "concepts": [{"extent": sorted(c.extent),
                             "intent": sorted(c.intent)} for c in found]}
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"{ctx.name or context_path}: {len(found)} concepts "
                   f"({ctx.n_objects} objects, {ctx.n_attributes} attributes)")
        if list_them:
            for c in found:
                click.echo("  {%s}  /  {%s}" % (
                    ", ".join(g for g in ctx.objects if g in c.extent),
                    ", ".join(m for m in ctx.attributes if m in c.intent)))
    if tsv_path:
        _write_rows(tsv_path, ["extent", "intent"],
                    [(",".join(sorted(c.extent)), ",".join(sorted(c.intent)))
                     for c in found])


@main.command()
@click.argument("base_path")
@click.argument("scale_path")
@click.option("--sigma", "assignment_path", type=click.Path(exists=False),
              default=None, help="JSON object map from base to scale objects.")
def check(base_path: str, scale_path: str, assignment_path: str | None) -> None:
    """Validate a scale-measure; exit 1 if it reflects a non-extent."""
    sm = _measure_from_args(base_path, scale_path, assignment_path)
    witness = sm.invalid_witness()
    if witness is not None:
        click.echo("invalid scale-measure: reflected set {%s} is not an "
                   "extent of the base" % ", ".join(sorted(witness)))
        sys.exit(1)
    reflected = len(sm.reflected_extents())
    total = sm.base.concept_count()
    click.echo(f"valid scale-measure: reflects {reflected}/{total} extents "
               f"of {sm.base.name or base_path}")


@main.command()
@click.argument("base_path")
@click.argument("scale_path")
@click.option("--sigma", "assignment_path", default=None)
@click.option("-o", "--out", "out_path", type=click.Path(), default=None,
              help="Write the canonical scale context to this .cxt file.")
def canonical(base_path: str, scale_path: str, assignment_path: str | None,
              out_path: str | None) -> None:
    """Rebuild an equivalent scale from the reflected extents."""
    sm = _measure_from_args(base_path, scale_path, assignment_path)
    try:
        canon = canonical_representation(sm)
    except FcaError as exc:
        click.echo(f"invalid scale-measure: {exc}")
        sys.exit(1)
    text = write_cxt(canon.scale)
    if out_path:
        Path(out_path).write_text(text)
        click.echo(f"canonical scale with {canon.scale.n_attributes} "
                   f"attributes written to {out_path}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("base_path")
@click.argument("scale_path")
@click.option("--sigma", "assignment_path", default=None)
@click.option("-o", "--out", "out_path", type=click.Path(), default=None,
              help="Write the conjunctive scale context to this .cxt file.")
def cnf(base_path: str, scale_path: str, assignment_path: str | None,
        out_path: str | None) -> None:
    """Express a scale-measure through conjunctions of base attributes."""
    sm = _measure_from_args(base_path, scale_path, assignment_path)
    try:
        result = conjunctive_normalform(sm)
    except FcaError as exc:
        click.echo(f"invalid scale-measure: {exc}")
        sys.exit(1)
    for attr in result.attributes:
        click.echo("%s\t%s\t{%s}" % (attr.label,
                                     ",".join(attr.source_attributes),
                                     ",".join(sorted(attr.extent))))
    if out_path:
        Path(out_path).write_text(write_cxt(result.measure.scale))
        click.echo(f"conjunctive scale written to {out_path}")


@main.command()
@click.argument("context_path")
@click.option("--json", "as_json", is_flag=True)
@click.option("--tsv", "tsv_path", type=click.Path(), default=None)
def irreducibles(context_path: str, as_json: bool, tsv_path: str | None) -> None:
    """Atoms and meet-irreducible coarsenings of a context."""
    ctx = _load(context_path)
    extents = extent_family(ctx)
    atoms = join_irreducibles(extents)
    meets = meet_irreducibles(extents)
    count = count_meet_irreducibles(extents)
    if as_json:
        doc = {
            "context": ctx.name,
            "extent_count": len(extents),
            "atom_count": len(atoms),
            "meet_irreducible_count": count,
            "meet_irreducibles": [{
                "members": [sorted(m) for m in d.family.members()],
                "cover_lower": sorted(d.generator[0]),
                "cover_upper": sorted(d.generator[1]),
            } for d in meets],
        }
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"{ctx.name or context_path}: {len(extents)} extents, "
                   f"{len(atoms)} atoms, {count} meet-irreducible coarsenings")
        for d in meets:
            click.echo("  %d members, from cover {%s} < {%s}" % (
                len(d.family), ", ".join(sorted(d.generator[0])),
                ", ".join(sorted(d.generator[1]))))
    if tsv_path:
        _write_rows(tsv_path, ["members", "cover_lower", "cover_upper"],
                    [(";".join(",".join(sorted(m)) for m in d.family.members()),
                      ",".join(sorted(d.generator[0])),
                      ",".join(sorted(d.generator[1]))) for d in meets])


@main.command("ideal-stats")
@click.argument("context_path")
@click.option("--bound", type=int, default=16, show_default=True,
              help="Largest extent count the enumeration will accept.")
@click.option("--tsv", "tsv_path", type=click.Path(), default=None,
              help="Write the property rows to a tab-delimited file.")
@click.option("--figure", "figure_path", type=click.Path(), default=None,
              help="Render the coarsening lattice to this image file.")
@click.option("--json", "as_json", is_flag=True)
def ideal_stats(context_path: str, bound: int, tsv_path: str | None,
                figure_path: str | None, as_json: bool) -> None:
    """Enumerate all coarsenings of a context and verify their laws."""
    ctx = _load(context_path)
    extents = extent_family(ctx)
    try:
        report = property_suite(extents, bound)
    except BoundExceededError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(f"{ctx.name or context_path}: {report.extent_count} extents, "
                   f"{report.ideal_size} coarsenings, {report.atom_count} atoms, "
                   f"{report.meet_irreducible_count} meet-irreducibles "
                   f"({report.cover_pair_count} cover pairs)")
        for name, state, witness in report.rows():
            suffix = f"  [{witness}]" if witness else ""
            click.echo(f"  {name}: {state}{suffix}")
    if tsv_path:
        _write_rows(tsv_path, ["property", "state", "witness"], report.rows())
    if figure_path:
        from .draw import render_ideal

        render_ideal(extents, figure_path, bound,
                     title=f"coarsenings of {ctx.name or context_path}")
        click.echo(f"figure written to {figure_path}")
    if not report.all_passed:
        sys.exit(1)


# ---------------------------------------------------------------------------
# exploration commands


def _echo_query(query: xp.Query) -> None:
    click.echo("premise   {%s}" % ", ".join(sorted(query.premise)))
    click.echo("closes to {%s}" % ", ".join(sorted(query.conclusion)))
    click.echo("shared    {%s}" % ", ".join(sorted(query.shared_intent)))
    click.echo("candidates %s" % (", ".join(sorted(query.candidates)) or "(none)"))


def _session_outputs(session: xp.ExplorationSession, out_path: str | None,
                     report_path: str | None, figure_path: str | None,
                     as_json: bool) -> None:
    reflected = session.reflected_family()
    summary = (f"done: {session.counterexample_count()} counterexamples, "
               f"{session.accept_count()} accepts, "
               f"{len(session.scale_attribute_extents())} scale attributes, "
               f"{len(reflected)} concepts in the scale lattice")
    if session.truncated:
        summary += " (truncated)"
    if as_json:
        click.echo(json.dumps(session.to_doc(), indent=2))
    else:
        click.echo(summary)
    if out_path:
        Path(out_path).write_text(write_cxt(session.scale_context()))
        click.echo(f"scale written to {out_path}")
    if report_path:
        rows = []
        for rec in session.history:
            kind = "accept" if isinstance(rec.answer, xp.Accept) else "counterexample"
            detail = ("" if isinstance(rec.answer, xp.Accept)
                      else ",".join(sorted(rec.answer.attributes)))
            extent = ",".join(sorted(rec.new_extent)) if rec.new_extent else ""
            rows.append((",".join(sorted(rec.query.premise)),
                         ",".join(sorted(rec.query.conclusion)),
                         kind, detail, extent))
        _write_rows(report_path, ["premise", "conclusion", "answer",
                                  "attributes", "new_extent"], rows)
        click.echo(f"history written to {report_path}")
    if figure_path:
        from .draw import render_growth

        counts = []
        replayed = xp.ExplorationSession(session.base,
                                         init_base=session.init_base,
                                         limits=session.limits)
        counts.append(len(replayed.reflected_family()))
        for rec in session.history:
            replayed.answer(rec.answer)
            counts.append(len(replayed.reflected_family()))
        render_growth(counts, figure_path, title="reflected extents per step")
        click.echo(f"figure written to {figure_path}")


@main.command()
@click.argument("context_path")
@click.option("--script", "script_path", type=click.Path(), default=None,
              help="Answer queries from a JSON script instead of a prompt.")
@click.option("--interactive", is_flag=True,
              help="Prompt for every answer (the default without --script).")
@click.option("--order", default=None,
              help="Comma separated object order for the lectic walk.")
@click.option("--no-base", is_flag=True,
              help="Start from an empty theory instead of the canonical base.")
@click.option("--limit-queries", type=int, default=None)
@click.option("--limit-attributes", type=int, default=None)
@click.option("-o", "--out", "out_path", type=click.Path(), default=None,
              help="Write the explored scale context to this .cxt file.")
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.option("--figure", "figure_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def explore(context_path: str, script_path: str | None, interactive: bool,
            order: str | None, no_base: bool, limit_queries: int | None,
            limit_attributes: int | None, out_path: str | None,
            report_path: str | None, figure_path: str | None,
            as_json: bool) -> None:
    """Explore a scale-measure, scripted or interactively."""
    if interactive and script_path:
        raise click.UsageError("--interactive and --script exclude each other")
    ctx = _load(context_path)
    order_list = order.split(",") if order else None
    init_base = not no_base
    script_doc = None
    if script_path:
        try:
            script_doc = load_json(script_path)
        except FormatError as exc:
            raise click.UsageError(str(exc))
        # The script may pin the object order it was recorded under.
        if order_list is None:
            order_list = script_doc.get("order")
        if not no_base:
            init_base = script_doc.get("init_base", True)
    limits = xp.ExplorationLimits(max_queries=limit_queries,
                                  max_scale_attributes=limit_attributes)
    try:
        session = xp.ExplorationSession(ctx, init_base=init_base,
                                        order=order_list, limits=limits)
    except FcaError as exc:
        raise click.UsageError(str(exc))

    if script_doc is not None:
        steps = script_from_doc(script_doc)
        expert = xp.scripted_expert(steps)
        while (query := session.current_query()) is not None:
            session.answer(expert(query))
    else:
        while (query := session.current_query()) is not None:
            click.echo()
            _echo_query(query)
            raw = click.prompt(
                "accept (a) or counterexample attributes, comma separated",
                default="a", show_default=False)
            if raw.strip().lower() in ("a", "accept", ""):
                session.answer_accept()
                continue
            attrs = [t.strip() for t in raw.split(",") if t.strip()]
            try:
                extent = session.answer_counterexample(attrs)
                click.echo("added scale attribute {%s}" % ", ".join(sorted(extent)))
            except (RejectedCounterexampleError, FcaError) as exc:
                click.echo(f"rejected: {exc}")
    _session_outputs(session, out_path, report_path, figure_path, as_json)


@main.command()
@click.argument("context_path")
@click.option("--measure", default="separation", show_default=True,
              type=click.Choice(sorted(MEASURES)),
              help="Importance measure steering the counterexamples.")
@click.option("--top-k", "top", type=int, default=None,
              help="Only draw counterexamples from this many top concepts.")
@click.option("--budget", type=int, default=10, show_default=True,
              help="Number of counterexamples the automatic expert may give.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--base/--no-base", "with_base", default=False,
              help="Seed the theory with the canonical base (slower).")
@click.option("--order", default=None)
@click.option("-o", "--out", "out_path", type=click.Path(), default=None)
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.option("--figure", "figure_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def auto(context_path: str, measure: str, top: int | None, budget: int,
         seed: int, with_base: bool, order: str | None, out_path: str | None,
         report_path: str | None, figure_path: str | None, as_json: bool) -> None:
    """Derive a small scale automatically from important concepts."""
    ctx = _load(context_path)
    order_list = order.split(",") if order else None
    expert = xp.automatic_expert(ctx, measure=measure, top=top,
                                 budget=budget, seed=seed)
    result = xp.run(ctx, expert, init_base=with_base, order=order_list)
    _session_outputs(result.session, out_path, report_path, figure_path, as_json)


@main.command()
@click.argument("context_path")
@click.option("--dot", "dot_path", type=click.Path(), default=None)
@click.option("--json", "json_path", type=click.Path(), default=None)
@click.option("--png", "png_path", type=click.Path(), default=None,
              help="Render the layered diagram to an image file.")
def lattice(context_path: str, dot_path: str | None, json_path: str | None,
            png_path: str | None) -> None:
    """Export the concept lattice as DOT, JSON, or an image."""
    ctx = _load(context_path)
    graph = lattice_graph(ctx)
    click.echo(f"{ctx.name or context_path}: {len(graph.nodes)} nodes, "
               f"{len(graph.edges)} edges")
    if dot_path:
        Path(dot_path).write_text(lattice_to_dot(graph))
        click.echo(f"dot written to {dot_path}")
    if json_path:
        Path(json_path).write_text(json.dumps(graph.to_doc(), indent=2))
        click.echo(f"json written to {json_path}")
    if png_path:
        from .draw import render_lattice

        render_lattice(graph, png_path)
        click.echo(f"figure written to {png_path}")


@main.command()
@click.argument("context_path")
@click.option("--measure", default="separation", type=click.Choice(sorted(MEASURES)))
@click.option("--top-k", "top", type=int, default=10, show_default=True)
def rank(context_path: str, measure: str, top: int) -> None:
    """Rank concepts by an importance measure."""
    ctx = _load(context_path)
    for cs in rank_concepts(ctx, measure, top):
        extent, intent, score = cs.as_row()
        click.echo(f"{score}\t{{{extent}}}\t{{{intent}}}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8047, show_default=True)
@click.option("--cors", "cors_origins", multiple=True,
              help="Allowed CORS origin, repeatable.")
@click.option("--snapshot-dir", type=click.Path(), default=None,
              help="Persist session snapshots as JSON files here.")
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Serve a static frontend from this directory at /.")
def serve(host: str, port: int, cors_origins: tuple[str, ...],
          snapshot_dir: str | None, ui_dir: str | None) -> None:
    """Run the exploration HTTP service."""
    import uvicorn

    from .server import create_app

    app = create_app(snapshot_dir=snapshot_dir, cors_origins=cors_origins,
                     ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
