"""Model file format and graph export.

A model file is a single JSON document holding one shared alphabet, a list
of automata tagged ``plant``/``specification``/``supervisor``, and optional
synthesis options.  Serialization uses a stable field order and canonical
sorting so identical models produce identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .automata import Alphabet, Automaton, Event
from .composition import plantify, sync_product
from .errors import ModelError
from .synthesis import SynthesisResult

FORMAT_VERSION = "1"
KINDS = ("plant", "specification", "supervisor")


@dataclass(frozen=True)
class AutomatonEntry:
    automaton: Automaton
    kind: str = "plant"
    forcing_states: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ModelError(f"unknown automaton kind: {self.kind!r}")
        stray = self.forcing_states - self.automaton.state_set
        if stray:
            raise ModelError(f"forcing state not found: {sorted(stray)[0]!r}")


@dataclass(frozen=True)
class ModelFile:
    alphabet: Alphabet
    automata: tuple[AutomatonEntry, ...]
    options: dict[str, Any] = field(default_factory=dict)
    version: str = FORMAT_VERSION

    def __post_init__(self) -> None:
        names = [e.automaton.name for e in self.automata]
        if len(set(names)) != len(names):
            dup = next(n for i, n in enumerate(names) if n in names[:i])
            raise ModelError(f"duplicate automaton name: {dup!r}")

    def get(self, name: str) -> AutomatonEntry:
        for entry in self.automata:
            if entry.automaton.name == name:
                return entry
        raise ModelError(f"unknown automaton: {name!r}")

    def of_kind(self, kind: str) -> tuple[AutomatonEntry, ...]:
        return tuple(e for e in self.automata if e.kind == kind)


def _expect(obj: Any, typ: type, where: str) -> Any:
    if not isinstance(obj, typ):
        raise ModelError(f"{where}: expected {typ.__name__}, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ModelError(f"{where}: unknown field {key!r}")
    for key in required:
        if key not in obj:
            raise ModelError(f"{where}: missing field {key!r}")


def _parse_automaton(obj: Any, alphabet: Alphabet, where: str) -> AutomatonEntry:
    _expect(obj, dict, where)
    _check_keys(
        obj,
        {"name", "kind", "states", "initial", "marked", "transitions",
         "sub_alphabet", "forcing_states"},
        {"name", "states", "initial", "marked", "transitions"},
        where,
    )
    name = _expect(obj["name"], str, f"{where}.name")
    kind = obj.get("kind", "plant")
    if kind not in KINDS:
        raise ModelError(f"{where}.kind: unknown kind {kind!r}")
    states = [
        _expect(s, str, f"{where}.states[{i}]")
        for i, s in enumerate(_expect(obj["states"], list, f"{where}.states"))
    ]
    initial = _expect(obj["initial"], str, f"{where}.initial")
    marked = [
        _expect(s, str, f"{where}.marked[{i}]")
        for i, s in enumerate(_expect(obj["marked"], list, f"{where}.marked"))
    ]
    triples = []
    for i, tr in enumerate(_expect(obj["transitions"], list, f"{where}.transitions")):
        tw = f"{where}.transitions[{i}]"
        _expect(tr, dict, tw)
        _check_keys(tr, {"from", "event", "to"}, {"from", "event", "to"}, tw)
        triples.append(
            (
                _expect(tr["from"], str, f"{tw}.from"),
                _expect(tr["event"], str, f"{tw}.event"),
                _expect(tr["to"], str, f"{tw}.to"),
            )
        )
    sub = obj.get("sub_alphabet")
    if sub is not None:
        sub = [
            _expect(s, str, f"{where}.sub_alphabet[{i}]")
            for i, s in enumerate(_expect(sub, list, f"{where}.sub_alphabet"))
        ]
    forcing = obj.get("forcing_states", [])
    forcing = [
        _expect(s, str, f"{where}.forcing_states[{i}]")
        for i, s in enumerate(_expect(forcing, list, f"{where}.forcing_states"))
    ]
    if forcing and kind != "supervisor":
        raise ModelError(f"{where}: forcing_states only valid on supervisors")
    try:
        automaton = Automaton(name, alphabet, states, initial, marked, triples, events=sub)
        return AutomatonEntry(automaton, kind, frozenset(forcing))
    except ModelError as exc:
        raise ModelError(f"{where}: {exc}") from None


def from_obj(obj: Any) -> ModelFile:
    _expect(obj, dict, "model")
    _check_keys(obj, {"version", "alphabet", "automata", "options"},
                {"alphabet", "automata"}, "model")
    version = obj.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ModelError(f"model.version: unsupported version {version!r}")
    events = []
    for i, ev in enumerate(_expect(obj["alphabet"], list, "model.alphabet")):
        where = f"model.alphabet[{i}]"
        _expect(ev, dict, where)
        _check_keys(ev, {"name", "controllable", "forcible"}, {"name"}, where)
        events.append(
            Event(
                _expect(ev["name"], str, f"{where}.name"),
                bool(ev.get("controllable", True)),
                bool(ev.get("forcible", False)),
            )
        )
    try:
        alphabet = Alphabet(events)
    except ModelError as exc:
        raise ModelError(f"model.alphabet: {exc}") from None
    entries = tuple(
        _parse_automaton(a, alphabet, f"model.automata[{i}]")
        for i, a in enumerate(_expect(obj["automata"], list, "model.automata"))
    )
    options = obj.get("options", {})
    _expect(options, dict, "model.options")
    return ModelFile(alphabet, entries, dict(options), version)


def loads(text: str) -> ModelFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_obj(obj)


def load(path: str | Path) -> ModelFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return loads(text)
    except ModelError as exc:
        raise ModelError(f"{path}: {exc}") from None


def to_obj(model: ModelFile) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "version": model.version,
        "alphabet": [
            {"name": e.name, "controllable": e.controllable, "forcible": e.forcible}
            for e in model.alphabet
        ],
        "automata": [],
    }
    for entry in model.automata:
        a = entry.automaton
        item: dict[str, Any] = {
            "name": a.name,
            "kind": entry.kind,
            "states": list(a.states),
            "initial": a.initial,
            "marked": sorted(a.marked),
            "transitions": [
                {"from": src, "event": ev, "to": dst}
                for (src, ev), dst in sorted(a.transitions.items())
            ],
            "sub_alphabet": list(a.events),
        }
        if entry.forcing_states:
            item["forcing_states"] = sorted(entry.forcing_states)
        obj["automata"].append(item)
    if model.options:
        obj["options"] = model.options
    return obj


def dumps(model: ModelFile) -> str:
    return json.dumps(to_obj(model), indent=2, ensure_ascii=False) + "\n"


def save(model: ModelFile, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")


def build_plant(
    model: ModelFile, plantify_specs: bool = True, name: str | None = None
) -> Automaton:
    """The synthesis input: synchronous product of the plant components and
    the (by default plantified) specifications.  Supervisor entries are
    ignored."""
    components: list[Automaton] = []
    for entry in model.automata:
        if entry.kind == "plant":
            components.append(entry.automaton)
        elif entry.kind == "specification":
            components.append(
                plantify(entry.automaton) if plantify_specs else entry.automaton
            )
    if not components:
        raise ModelError("model has no plant or specification automata")
    if len(components) == 1 and name is None:
        return components[0]
    return sync_product(components, name=name)


def supervisor_model(result: SynthesisResult, name: str | None = None) -> ModelFile:
    """Wrap a nonempty synthesis result as a model file."""
    if result.supervisor is None:
        raise ModelError("empty supervisor cannot be serialized")
    sup = result.supervisor
    if name is not None and name != sup.name:
        sup = Automaton(
            name, sup.alphabet, sup.states, sup.initial, sup.marked,
            sup.transitions, events=sup.events,
        )
    return ModelFile(
        sup.alphabet,
        (AutomatonEntry(sup, "supervisor", result.forcing_states),),
        {"mode": result.mode},
    )


def with_forcible(model: ModelFile, names: Iterable[str]) -> ModelFile:
    """Copy of the model with the alphabet's forcible set replaced."""
    alphabet = model.alphabet.with_forcible(names)
    entries = tuple(
        AutomatonEntry(e.automaton.with_alphabet(alphabet), e.kind, e.forcing_states)
        for e in model.automata
    )
    return ModelFile(alphabet, entries, dict(model.options), model.version)


def to_dot(
    automaton: Automaton,
    forcing_states: Iterable[str] = (),
    current: str | None = None,
    title: str | None = None,
) -> str:
    """Graphviz text: marked states are double circles, forcing states are
    filled green, uncontrollable edges dashed, forcible labels underlined."""
    forcing = frozenset(forcing_states)
    alphabet = automaton.alphabet
    lines = [
        f'digraph "{title or automaton.name}" {{',
        "  rankdir=LR;",
        '  node [shape=circle, fontname="Helvetica"];',
        '  edge [fontname="Helvetica"];',
        '  __init__ [shape=point, style=invis];',
    ]
    for q in automaton.states:
        attrs = []
        if q in automaton.marked:
            attrs.append("shape=doublecircle")
        if q in forcing:
            attrs.append("style=filled")
            attrs.append("fillcolor=palegreen")
        if q == current:
            attrs.append("penwidth=3")
            attrs.append("color=blue")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{q}"{suffix};')
    lines.append(f'  __init__ -> "{automaton.initial}";')
    for (src, ev), dst in sorted(automaton.transitions.items()):
        attrs = []
        if alphabet[ev].forcible:
            attrs.append(f"label=<<u>{ev}</u>>")
        else:
            attrs.append(f'label="{ev}"')
        if not alphabet[ev].controllable:
            attrs.append("style=dashed")
        lines.append(f'  "{src}" -> "{dst}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def builtin_model_path(name: str) -> Path:
    """Path of a model shipped with the package (``manufacturing_line`` or
    ``small_factory``)."""
    root = resources.files("forcesynth") / "models" / f"{name}.json"
    if not root.is_file():
        raise ModelError(f"unknown builtin model: {name!r}")
    return Path(str(root))
