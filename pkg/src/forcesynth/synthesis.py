"""Maximally permissive, forcibly-controllable, nonblocking supervisor synthesis.

The outer loop alternates a backward nonblocking fixpoint with a bad/forcing
fixpoint and then restricts the transition relation: forcing states keep only
their forcible transitions.  Iteration stops when states and transitions both
stabilize.

Undefined transitions in the fixpoint clauses are resolved as follows: a
forcible step "saves" a state only when it is defined and leads outside the
bad set, and an uncontrollable trigger counts only when defined and leading
into the bad set.  A forcing state whose forcible steps have all stopped
saving it becomes bad itself; without that rule the loop can fail to
terminate once a forcing state's uncontrollable transitions are already gone.

Modes:

* ``fc``       -- the full algorithm (default);
* ``classic``  -- forcible set treated as empty, yielding the maximally
  permissive controllable nonblocking supervisor;
* ``forcible`` -- the bad/forcing triggers quantify over all events instead
  of the uncontrollable ones, yielding the maximally permissive forcible
  nonblocking supervisor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .automata import Alphabet, Automaton

MODE_FC = "fc"
MODE_CLASSIC = "classic"
MODE_FORCIBLE = "forcible"
MODES = (MODE_FC, MODE_CLASSIC, MODE_FORCIBLE)

Transitions = Mapping[tuple[str, str], str]


@dataclass(frozen=True)
class IterationSnapshot:
    """Per-iteration synthesis sets.  Snapshot 0 holds the input automaton;
    its nonblocking/bad/forcing sets are empty placeholders."""

    k: int
    states: frozenset[str]
    nonblocking: frozenset[str]
    bad: frozenset[str]
    forcing: frozenset[str]
    transitions: Transitions


@dataclass(frozen=True)
class SynthesisResult:
    """Synthesis outcome.  ``supervisor`` is ``None`` exactly when the
    initial state was removed (the empty supervisor).  The supervisor is
    pruned to its reachable part; ``forcing_states`` are the surviving
    forcing states, whose outgoing transitions are all forcible."""

    supervisor: Automaton | None
    forcing_states: frozenset[str]
    trace: tuple[IterationSnapshot, ...]
    mode: str
    iterations: int

    @property
    def is_empty(self) -> bool:
        return self.supervisor is None


def mode_event_sets(alphabet: Alphabet, mode: str) -> tuple[frozenset[str], frozenset[str]]:
    """(trigger events, forcible events) used by the fixpoints in ``mode``."""
    if mode == MODE_CLASSIC:
        return alphabet.uncontrollable, frozenset()
    if mode == MODE_FORCIBLE:
        return frozenset(alphabet.names), alphabet.forcible
    if mode == MODE_FC:
        return alphabet.uncontrollable, alphabet.forcible
    raise ValueError(f"unknown synthesis mode: {mode!r}")


def nonblocking_fixpoint(
    states: Iterable[str], transitions: Transitions, marked: Iterable[str]
) -> frozenset[str]:
    """Least fixpoint of backward reachability from the marked states:
    start from the marked states inside ``states`` and repeatedly add any
    state with a transition (on any event) into the current set."""
    qs = frozenset(states)
    rev: dict[str, list[str]] = {}
    for (src, _), dst in transitions.items():
        if src in qs and dst in qs:
            rev.setdefault(dst, []).append(src)
    nb = set(frozenset(marked) & qs)
    frontier = list(nb)
    while frontier:
        q = frontier.pop()
        for src in rev.get(q, ()):
            if src not in nb:
                nb.add(src)
                frontier.append(src)
    return frozenset(nb)


def bad_forcing_fixpoint(
    states: Iterable[str],
    transitions: Transitions,
    nonblocking: Iterable[str],
    forcing_seed: Iterable[str] = (),
    trigger_events: Iterable[str] = (),
    forcible_events: Iterable[str] = (),
) -> tuple[frozenset[str], frozenset[str]]:
    """Bad/forcing fixpoint for one outer iteration.

    Bad states seed from the blocking ones; a state joins the bad set when a
    trigger transition leads into it and no forcible transition escapes it,
    or when it is already a forcing state with no forcible escape left.  A
    state joins the forcing set when a trigger transition leads into the bad
    set while some forcible transition escapes it.  Both updates of a round
    read the previous round's bad set.
    """
    qs = frozenset(states)
    trigger = frozenset(trigger_events)
    forcible = frozenset(forcible_events)
    out_t: dict[str, list[str]] = {q: [] for q in qs}
    out_f: dict[str, list[str]] = {q: [] for q in qs}
    for (src, ev), dst in transitions.items():
        if src in qs and dst in qs:
            if ev in trigger:
                out_t[src].append(dst)
            if ev in forcible:
                out_f[src].append(dst)

    bad: set[str] = set(qs - frozenset(nonblocking))
    forcing: set[str] = set(frozenset(forcing_seed) & qs)
    for _ in range(2 * len(qs) + 2):
        prev_bad = frozenset(bad)
        prev_forcing = frozenset(forcing)
        for q in qs:
            if q not in prev_bad:
                triggered = q in prev_forcing or any(t in prev_bad for t in out_t[q])
                if triggered and all(t in prev_bad for t in out_f[q]):
                    bad.add(q)
            if any(t in prev_bad for t in out_t[q]) and any(
                t not in prev_bad for t in out_f[q]
            ):
                forcing.add(q)
        if (
            bad == prev_bad
            and forcing == prev_forcing
            and all(any(t not in bad for t in out_f[q]) for q in forcing - bad)
        ):
            return frozenset(bad), frozenset(forcing)
    raise RuntimeError("bad/forcing fixpoint failed to stabilize")


def restrict_transitions(
    transitions: Transitions,
    keep_states: Iterable[str],
    forcing: Iterable[str] = (),
    forcible_events: Iterable[str] = (),
) -> dict[tuple[str, str], str]:
    """Transitions with both endpoints in ``keep_states``, minus every
    non-forcible transition leaving a forcing state."""
    keep = frozenset(keep_states)
    forcing = frozenset(forcing)
    forcible = frozenset(forcible_events)
    return {
        (src, ev): dst
        for (src, ev), dst in transitions.items()
        if src in keep and dst in keep and not (src in forcing and ev not in forcible)
    }


def synthesize(
    plant: Automaton, mode: str = MODE_FC, record_trace: bool = False
) -> SynthesisResult:
    """Synthesize the maximally permissive nonblocking supervisor of ``plant``
    for the given mode.  The empty supervisor is a valid result, not an error."""
    trigger, forcible = mode_event_sets(plant.alphabet, mode)
    states = frozenset(plant.state_set)
    delta: dict[tuple[str, str], str] = dict(plant.transitions)
    forcing: frozenset[str] = frozenset()
    trace: list[IterationSnapshot] = []
    if record_trace:
        trace.append(
            IterationSnapshot(0, states, frozenset(), frozenset(), frozenset(), dict(delta))
        )
    bound = len(states) + len(delta) + 2
    k = 0
    while True:
        nb = nonblocking_fixpoint(states, delta, plant.marked)
        bad, forcing = bad_forcing_fixpoint(
            states, delta, nb, forcing, trigger, forcible
        )
        next_states = states - bad
        next_delta = restrict_transitions(delta, next_states, forcing, forcible)
        k += 1
        if record_trace:
            trace.append(
                IterationSnapshot(k, next_states, nb, bad, forcing, next_delta)
            )
        stable = next_states == states and next_delta == delta
        states, delta = next_states, next_delta
        if stable:
            break
        if k > bound:
            raise RuntimeError("synthesis exceeded its termination bound")

    if plant.initial not in states:
        return SynthesisResult(None, frozenset(), tuple(trace), mode, k)

    reach = {plant.initial}
    frontier = [plant.initial]
    adj: dict[str, list[str]] = {}
    for (src, _), dst in delta.items():
        adj.setdefault(src, []).append(dst)
    while frontier:
        q = frontier.pop()
        for t in adj.get(q, ()):
            if t not in reach:
                reach.add(t)
                frontier.append(t)
    supervisor = Automaton(
        f"{plant.name}_sup",
        plant.alphabet,
        [s for s in plant.states if s in reach],
        plant.initial,
        plant.marked & reach,
        {key: dst for key, dst in delta.items() if key[0] in reach},
        events=plant.events,
    )
    return SynthesisResult(
        supervisor, forcing & reach, tuple(trace), mode, k
    )


def verify_snapshot_invariants(result: SynthesisResult, plant: Automaton) -> list[str]:
    """Check the per-iteration invariants on a recorded trace.

    * monotone shrinking of states and transitions;
    * every forcing-but-not-bad state keeps a forcible transition inside the
      current state set and defines no non-forcible transition;
    * every surviving non-forcing state retains every trigger transition the
      input automaton gave it.

    Returns a list of human-readable violations (empty when all hold).
    """
    trigger, forcible = mode_event_sets(plant.alphabet, result.mode)
    violations: list[str] = []
    if not result.trace:
        return ["no trace recorded"]
    delta0 = result.trace[0].transitions
    for snap, prev in zip(result.trace[1:], result.trace):
        if not snap.states <= prev.states:
            violations.append(f"k={snap.k}: state set grew")
        if not set(snap.transitions) <= set(prev.transitions):
            violations.append(f"k={snap.k}: transition set grew")
        for name, subset in (
            ("nonblocking", snap.nonblocking),
            ("bad", snap.bad),
            ("forcing", snap.forcing),
        ):
            if not subset <= prev.states:
                violations.append(f"k={snap.k}: {name} set outside previous states")
    for snap in result.trace:
        seen = {src for (src, _) in snap.transitions}
        out: dict[str, dict[str, str]] = {q: {} for q in snap.states | seen}
        for (src, ev), dst in snap.transitions.items():
            out[src][ev] = dst
        for q in sorted(snap.forcing - snap.bad):
            if q not in snap.states:
                continue
            if not any(
                ev in forcible and dst in snap.states for ev, dst in out[q].items()
            ):
                violations.append(f"k={snap.k}: forcing state {q!r} has no forcible escape")
            if any(ev not in forcible for ev in out[q]):
                violations.append(
                    f"k={snap.k}: forcing state {q!r} keeps a non-forcible transition"
                )
        for q in sorted(snap.states - snap.forcing):
            for ev in sorted(trigger):
                if (q, ev) in delta0 and (q, ev) not in snap.transitions:
                    violations.append(
                        f"k={snap.k}: state {q!r} lost trigger transition on {ev!r}"
                    )
    return violations
