"""Command-line interface.

Exit codes: 0 success, 1 usage or model errors, 2 empty supervisor.
A failing property check or oracle comparison prints FAIL but still exits 0;
the run itself succeeded.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import model_io
from .automata import StringSample
from .control import TranscriptEntry, initial_state, random_walk, replay
from .errors import ForcesynthError, ModelError, StepRejected
from .oracle import oracle_compare
from .properties import (
    check_controllable,
    check_forcible,
    check_forcibly_controllable,
    check_supervisor_fc,
)
from .synthesis import MODES, synthesize

EXIT_EMPTY_SUPERVISOR = 2


@click.group()
def cli() -> None:
    """Supervisory control synthesis with forcible events."""


def _load_model(path: str) -> model_io.ModelFile:
    return model_io.load(path)


def _apply_forcible(model: model_io.ModelFile, forcible: str | None) -> model_io.ModelFile:
    if forcible is None:
        return model
    names = [n for n in (part.strip() for part in forcible.split(",")) if n]
    return model_io.with_forcible(model, names)


def _supervisor_entry(model: model_io.ModelFile) -> model_io.AutomatonEntry:
    sups = model.of_kind("supervisor")
    if not sups:
        raise ModelError("model contains no supervisor automaton")
    return sups[0]


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(MODES), default="fc", show_default=True)
@click.option("--spec-plantify/--no-spec-plantify", default=True, show_default=True,
              help="Plantify specification automata before composing.")
@click.option("--forcible", default=None,
              help="Comma-separated event names; overrides the alphabet's forcible flags.")
@click.option("--trace", is_flag=True, help="Print per-iteration synthesis sets.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the supervisor model file here.")
def synth(model_path: str, mode: str, spec_plantify: bool, forcible: str | None,
          trace: bool, out: str | None) -> None:
    """Synthesize a supervisor for the composed plant of MODEL_PATH."""
    model = _apply_forcible(_load_model(model_path), forcible)
    plant = model_io.build_plant(model, plantify_specs=spec_plantify)
    result = synthesize(plant, mode, record_trace=trace)
    click.echo(f"plant: {len(plant.states)} states, {len(plant.transitions)} transitions")
    if trace:
        for snap in result.trace[1:]:
            click.echo(
                f"iter {snap.k}: states={len(snap.states)}"
                f" nonblocking={len(snap.nonblocking)}"
                f" bad=[{', '.join(sorted(snap.bad))}]"
                f" forcing=[{', '.join(sorted(snap.forcing))}]"
                f" transitions={len(snap.transitions)}"
            )
    if result.supervisor is None:
        click.echo("empty supervisor: the initial state was removed")
        sys.exit(EXIT_EMPTY_SUPERVISOR)
    sup = result.supervisor
    click.echo(f"supervisor: {len(sup.states)} states, {len(sup.transitions)} transitions")
    click.echo(f"marked states: {len(sup.marked)}")
    forcing = ", ".join(sorted(result.forcing_states)) or "(none)"
    click.echo(f"forcing states: {forcing}")
    click.echo(f"iterations: {result.iterations}")
    if out:
        model_io.save(model_io.supervisor_model(result), out)
        click.echo(f"wrote supervisor to {out}")


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--name", default=None, help="Name of the product automaton.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def product(model_path: str, name: str | None, out: str | None) -> None:
    """Synchronous product of the model's plants and specifications, as-is
    (no plantification)."""
    model = _load_model(model_path)
    composed = model_io.build_plant(model, plantify_specs=False, name=name)
    click.echo(f"product: {len(composed.states)} states, {len(composed.transitions)} transitions")
    click.echo(f"states: {', '.join(composed.states)}")
    if out:
        out_model = model_io.ModelFile(
            composed.alphabet, (model_io.AutomatonEntry(composed, "plant"),)
        )
        model_io.save(out_model, out)
        click.echo(f"wrote product to {out}")


@cli.command("plantify")
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--automaton", "which", default=None,
              help="Plantify only this automaton (default: every specification).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def plantify_cmd(model_path: str, which: str | None, out: str | None) -> None:
    """Plantify specification automata: route missing uncontrollable events
    to a fresh dump state."""
    from .composition import plantify

    model = _load_model(model_path)
    entries = []
    changed = []
    for entry in model.automata:
        wanted = entry.automaton.name == which if which else entry.kind == "specification"
        if wanted:
            plantified = plantify(entry.automaton)
            entries.append(model_io.AutomatonEntry(plantified, "plant"))
            changed.append(plantified)
        else:
            entries.append(entry)
    if which and not changed:
        raise ModelError(f"unknown automaton: {which!r}")
    for a in changed:
        click.echo(f"{a.name}: {len(a.states)} states, {len(a.transitions)} transitions")
    if out:
        model_io.save(
            model_io.ModelFile(model.alphabet, tuple(entries), dict(model.options)), out
        )
        click.echo(f"wrote plantified model to {out}")


def _echo_report(report) -> None:
    click.echo(f"{report.name}: {'PASS' if report.holds else 'FAIL'}")
    for w in report.witnesses:
        at = f" on {w.event}" if w.event else ""
        click.echo(f"  witness: {w.subject}{at} ({w.clause})")
    if report.classification is not None:
        for state in sorted(report.classification):
            click.echo(f"  {state}: {report.classification[state]}")


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--supervisor", "supervisor_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Check this supervisor file against the composed plant.")
@click.option("--strings", "strings_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file with a finite language sample.")
@click.option("--property", "prop", type=click.Choice(["controllable", "fc", "forcible"]),
              default="fc", show_default=True)
@click.option("--spec-plantify/--no-spec-plantify", default=True, show_default=True)
def check(model_path: str, supervisor_path: str | None, strings_path: str | None,
          prop: str, spec_plantify: bool) -> None:
    """Check a language sample or a supervisor against the composed plant."""
    model = _load_model(model_path)
    plant = model_io.build_plant(model, plantify_specs=spec_plantify)
    if (supervisor_path is None) == (strings_path is None):
        raise ModelError("pass exactly one of --supervisor or --strings")
    if supervisor_path is not None:
        entry = _supervisor_entry(model_io.load(supervisor_path))
        report = check_supervisor_fc(entry.automaton, plant)
    else:
        try:
            obj = json.loads(Path(strings_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelError(f"{strings_path}: invalid JSON: {exc.msg}") from None
        if isinstance(obj, dict):
            sample = StringSample.of(obj.get("strings", []), obj.get("depth"))
        else:
            sample = StringSample.of(obj)
        checker = {
            "controllable": check_controllable,
            "fc": check_forcibly_controllable,
            "forcible": check_forcible,
        }[prop]
        report = checker(sample, plant)
    _echo_report(report)


@cli.command("oracle-compare")
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--depth", type=int, default=None, help="Comparison depth (default: states + 2).")
@click.option("--spec-plantify/--no-spec-plantify", default=True, show_default=True)
def oracle_compare_cmd(model_path: str, depth: int | None, spec_plantify: bool) -> None:
    """Compare synthesis output with the brute-force supremal language."""
    model = _load_model(model_path)
    plant = model_io.build_plant(model, plantify_specs=spec_plantify)
    report = oracle_compare(plant, depth)
    _echo_report(report)


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--automaton", "which", default=None,
              help="Which automaton to draw (default: the first one).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def dot(model_path: str, which: str | None, out: str | None) -> None:
    """Emit Graphviz text for one automaton of the model."""
    model = _load_model(model_path)
    entry = model.get(which) if which else model.automata[0]
    text = model_io.to_dot(entry.automaton, entry.forcing_states)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        click.echo(f"wrote DOT to {out}")
    else:
        click.echo(text, nl=False)


def _decision_obj(entry: TranscriptEntry) -> dict:
    d = entry.decision
    return {
        "index": entry.index,
        "plant_state": entry.before.plant_state,
        "sup_state": entry.before.sup_state,
        "decision": {
            "mode": d.mode,
            "allowed": sorted(d.allowed),
            "disabled": sorted(d.disabled),
            "preempted": sorted(d.preempted),
        },
        "event": entry.event,
        "next_plant_state": entry.after.plant_state,
        "next_sup_state": entry.after.sup_state,
    }


def _echo_transcript(transcript: list[TranscriptEntry], as_json: bool,
                     initial_plant: str, initial_sup: str) -> None:
    if as_json:
        click.echo(json.dumps(
            {"initial": {"plant_state": initial_plant, "sup_state": initial_sup},
             "steps": [_decision_obj(e) for e in transcript]},
            indent=2,
        ))
        return
    click.echo(f"initial: plant={initial_plant} sup={initial_sup}")
    for e in transcript:
        d = e.decision
        click.echo(
            f"step {e.index}: plant={e.before.plant_state} mode={d.mode}"
            f" allowed=[{', '.join(sorted(d.allowed))}]"
            f" preempted=[{', '.join(sorted(d.preempted))}]"
            f" fired={e.event} -> {e.after.plant_state}"
        )


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("supervisor_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--trace", "trace_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Text file with one event name per line.")
@click.option("--random", "seed", type=int, default=None, help="Seeded random walk.")
@click.option("--steps", type=int, default=20, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON transcript.")
@click.option("--spec-plantify/--no-spec-plantify", default=True, show_default=True)
def simulate(model_path: str, supervisor_path: str, trace_path: str | None,
             seed: int | None, steps: int, as_json: bool, spec_plantify: bool) -> None:
    """Run the closed loop: replay a trace or take a seeded random walk."""
    model = _load_model(model_path)
    plant = model_io.build_plant(model, plantify_specs=spec_plantify)
    entry = _supervisor_entry(model_io.load(supervisor_path))
    sup, forcing = entry.automaton, entry.forcing_states
    if (trace_path is None) == (seed is None):
        raise ModelError("pass exactly one of --trace or --random")
    start = initial_state(sup, plant)
    if trace_path is not None:
        events = Path(trace_path).read_text(encoding="utf-8").split()
        try:
            transcript = replay(sup, plant, events, forcing)
        except StepRejected as exc:
            raise ModelError(f"trace rejected: {exc}") from None
    else:
        transcript = random_walk(sup, plant, steps, seed, forcing)
    _echo_transcript(transcript, as_json, start.plant_state, start.sup_state)


@cli.command()
@click.option("--port", type=int, default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Static web UI directory to serve at /.")
def serve(port: int, host: str, ui_dir: str | None) -> None:
    """Run the HTTP session API (and optionally the web UI)."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(ui_dir=ui_dir), host=host, port=port, log_level="warning")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="forcesynth", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except ForcesynthError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except SystemExit as exc:  # empty-supervisor path
        return int(exc.code or 0)
    return 0


def entry() -> None:
    sys.exit(main())
