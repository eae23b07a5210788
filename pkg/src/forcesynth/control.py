"""Closed-loop execution of a supervisor against a plant.

``decide`` evaluates the supervisory control map at the current state: in
*disable* mode the supervisor allows every uncontrollable event plus the
controllable events it retains; in *force* mode it answers with the set of
forcible events that keep the loop inside the supervisor's language, and one
of them preempts everything else.  Which one fires is left to the caller
(the external forcing agent); ``random_walk`` picks uniformly with a seeded
generator.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automata import Automaton, format_string
from .errors import Desynchronized, DisabledBySupervisor, NotEligibleInPlant
from .properties import PropertyReport, Witness

DISABLE = "disable"
FORCE = "force"


@dataclass(frozen=True)
class ControlDecision:
    """The control map's value at one state.

    ``allowed`` are the events the loop may execute next (in force mode a
    nonempty subset of the forcible events); ``disabled`` are plant-eligible
    controllable events the supervisor withholds; ``preempted`` are
    plant-eligible events cut off by forcing.
    """

    mode: str
    allowed: frozenset[str]
    disabled: frozenset[str]
    preempted: frozenset[str]

    def __post_init__(self) -> None:
        assert self.mode in (DISABLE, FORCE)
        assert not (self.allowed & self.disabled)


@dataclass(frozen=True)
class LoopState:
    """Current plant/supervisor states plus the event history that led here."""

    plant_state: str
    sup_state: str
    history: tuple[str, ...] = ()


@dataclass(frozen=True)
class TranscriptEntry:
    index: int
    before: LoopState
    decision: ControlDecision
    event: str
    after: LoopState


def initial_state(sup: Automaton, plant: Automaton) -> LoopState:
    return LoopState(plant.initial, sup.initial, ())


def _check_sync(sup: Automaton, plant: Automaton, loop: LoopState) -> None:
    if plant.run(loop.history) != loop.plant_state:
        raise Desynchronized(
            f"desynchronized: history {format_string(loop.history)} does not reach "
            f"plant state {loop.plant_state!r}"
        )
    if sup.run(loop.history) != loop.sup_state:
        raise Desynchronized(
            f"desynchronized: history {format_string(loop.history)} does not reach "
            f"supervisor state {loop.sup_state!r}"
        )


def decide_at(
    sup: Automaton,
    plant: Automaton,
    plant_state: str,
    sup_state: str,
    forcing_states: Iterable[str] | None = None,
) -> ControlDecision:
    """Control decision at a plant/supervisor state pair.

    With a ``forcing_states`` annotation the mode comes straight from it;
    otherwise it is derived from the state: force exactly when the supervisor
    keeps a forcible continuation and some plant-eligible uncontrollable
    event would leave the supervisor's language.
    """
    alphabet = plant.alphabet
    enabled_sup = set(sup.out(sup_state))
    eligible = set(plant.out(plant_state))
    if forcing_states is not None:
        force = sup_state in frozenset(forcing_states)
    else:
        force = bool(enabled_sup & alphabet.forcible) and any(
            u in eligible and u not in enabled_sup for u in alphabet.uncontrollable
        )
    if force:
        allowed = frozenset(enabled_sup & alphabet.forcible)
        if not allowed:
            raise Desynchronized(
                f"forcing state {sup_state!r} has no forcible continuation"
            )
        return ControlDecision(
            FORCE, allowed, frozenset(), frozenset(eligible - allowed)
        )
    allowed = frozenset(alphabet.uncontrollable) | (
        frozenset(alphabet.controllable) & enabled_sup
    )
    return ControlDecision(
        DISABLE, allowed, frozenset(eligible - allowed), frozenset()
    )


def decide(
    sup: Automaton,
    plant: Automaton,
    loop: LoopState,
    forcing_states: Iterable[str] | None = None,
) -> ControlDecision:
    """Validated form of ``decide_at``: the loop state must replay."""
    _check_sync(sup, plant, loop)
    return decide_at(sup, plant, loop.plant_state, loop.sup_state, forcing_states)


def step(
    sup: Automaton,
    plant: Automaton,
    loop: LoopState,
    event: str,
    forcing_states: Iterable[str] | None = None,
) -> LoopState:
    """Advance the closed loop by one event allowed by the current decision."""
    decision = decide(sup, plant, loop, forcing_states)
    if event not in decision.allowed:
        raise DisabledBySupervisor(f"disabled by supervisor: {event!r}")
    plant_next = plant.target(loop.plant_state, event)
    if plant_next is None:
        raise NotEligibleInPlant(f"not eligible in plant: {event!r}")
    sup_next = sup.target(loop.sup_state, event)
    if sup_next is None:
        raise Desynchronized(
            f"supervisor cannot follow allowed event {event!r} at {loop.sup_state!r}"
        )
    return LoopState(plant_next, sup_next, loop.history + (event,))


def verify_closed_loop(
    sup: Automaton,
    plant: Automaton,
    depth: int,
    forcing_states: Iterable[str] | None = None,
) -> PropertyReport:
    """Exhaustively expand the closed loop to ``depth`` and compare its
    generated and marked string sets with the supervisor's bounded languages."""
    forcing = None if forcing_states is None else frozenset(forcing_states)
    generated: set[tuple[str, ...]] = set()
    marked: set[tuple[str, ...]] = set()
    stack: list[tuple[tuple[str, ...], str, str]] = [((), plant.initial, sup.initial)]
    while stack:
        seq, p, s = stack.pop()
        generated.add(seq)
        if s in sup.marked:
            marked.add(seq)
        if len(seq) == depth:
            continue
        decision = decide_at(sup, plant, p, s, forcing)
        for ev in sorted(decision.allowed & frozenset(plant.out(p))):
            sup_next = sup.target(s, ev)
            if sup_next is None:
                # An imperfect supervisor lets the plant escape its language;
                # such strings are generated by the loop but not tracked.
                generated.add(seq + (ev,))
                continue
            stack.append((seq + (ev,), plant.target(p, ev), sup_next))

    expect_closed = set(sup.bounded_language(depth, cap=depth).strings)
    expect_marked = set(sup.bounded_language(depth, marked_only=True, cap=depth).strings)
    witnesses: list[Witness] = []
    for clause, diff in (
        ("loop-only-string", generated - expect_closed),
        ("supervisor-only-string", expect_closed - generated),
        ("loop-only-marked", marked - expect_marked),
        ("supervisor-only-marked", expect_marked - marked),
    ):
        for s in sorted(diff, key=lambda t: (len(t), t)):
            witnesses.append(Witness(format_string(s), None, clause))
    return PropertyReport(not witnesses, tuple(witnesses), "closed-loop", depth=depth)


def replay(
    sup: Automaton,
    plant: Automaton,
    events: Sequence[str],
    forcing_states: Iterable[str] | None = None,
) -> list[TranscriptEntry]:
    """Run a fixed event trace through the loop; step errors propagate with
    the failing index attached."""
    loop = initial_state(sup, plant)
    transcript: list[TranscriptEntry] = []
    for i, ev in enumerate(events, start=1):
        decision = decide(sup, plant, loop, forcing_states)
        nxt = step(sup, plant, loop, ev, forcing_states)
        transcript.append(TranscriptEntry(i, loop, decision, ev, nxt))
        loop = nxt
    return transcript


def random_walk(
    sup: Automaton,
    plant: Automaton,
    steps: int,
    seed: int,
    forcing_states: Iterable[str] | None = None,
) -> list[TranscriptEntry]:
    """Seeded uniform walk over the executable events; stops early at a
    closed-loop deadlock."""
    rng = random.Random(seed)
    loop = initial_state(sup, plant)
    transcript: list[TranscriptEntry] = []
    for i in range(1, steps + 1):
        decision = decide(sup, plant, loop, forcing_states)
        choices = sorted(decision.allowed & frozenset(plant.out(loop.plant_state)))
        if not choices:
            break
        ev = rng.choice(choices)
        nxt = step(sup, plant, loop, ev, forcing_states)
        transcript.append(TranscriptEntry(i, loop, decision, ev, nxt))
        loop = nxt
    return transcript
