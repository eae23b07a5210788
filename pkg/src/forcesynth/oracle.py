"""Brute-force reference for synthesis on tiny instances.

Candidates are transition subsets of the plant with their induced reachable
subautomata; a candidate is admitted when it is nonblocking and passes the
state-level forcible-controllability check.  The union of the admitted
candidates' bounded marked languages is the reference value the synthesis
algorithm must reproduce.  Exact for supervisors representable as
subautomata of the plant, which is the class the algorithm targets.
"""
from __future__ import annotations

from typing import Iterator

from .automata import Automaton, StringSample, format_string, induced_subautomaton
from .errors import EnumerationCapExceeded
from .properties import PropertyReport, Witness, check_supervisor_fc
from .synthesis import MODE_FC, synthesize

#: Enumeration is exponential in the transition count; refuse beyond this.
TRANSITION_CAP = 18


def default_depth(plant: Automaton) -> int:
    """Comparison depth: two subautomata of the plant that differ do so on a
    string not much longer than the state count."""
    return len(plant.states) + 2


def enumerate_subautomata(plant: Automaton) -> Iterator[Automaton]:
    """All distinct reachable subautomata of ``plant`` (same initial state,
    transition subsets, inherited marking), each exactly once."""
    if len(plant.transitions) > TRANSITION_CAP:
        raise EnumerationCapExceeded(
            f"cap exceeded: {len(plant.transitions)} transitions > {TRANSITION_CAP}"
        )
    out = {
        q: sorted(plant.out(q).items()) for q in plant.states
    }

    def expand(
        order: list[str], kept: dict[tuple[str, str], str], i: int
    ) -> Iterator[Automaton]:
        if i == len(order):
            yield induced_subautomaton(
                plant, order, dict(kept), name=f"{plant.name}_candidate"
            )
            return
        q = order[i]
        options = out[q]
        for mask in range(1 << len(options)):
            chosen = [options[b] for b in range(len(options)) if mask >> b & 1]
            added: list[str] = []
            for ev, dst in chosen:
                kept[(q, ev)] = dst
                if dst not in order and dst not in added:
                    added.append(dst)
            order.extend(added)
            yield from expand(order, kept, i + 1)
            del order[len(order) - len(added):]
            for ev, _ in chosen:
                del kept[(q, ev)]

    yield from expand([plant.initial], {}, 0)


def admitted_candidates(plant: Automaton) -> list[Automaton]:
    """Candidates passing nonblocking plus the state-level
    forcible-controllability check against the plant."""
    result = []
    for cand in enumerate_subautomata(plant):
        if cand.is_nonblocking() and check_supervisor_fc(cand, plant).holds:
            result.append(cand)
    return result


def brute_force_supremal(plant: Automaton, depth: int | None = None) -> StringSample:
    """Union of the admitted candidates' bounded marked languages."""
    if depth is None:
        depth = default_depth(plant)
    union: set[tuple[str, ...]] = set()
    for cand in admitted_candidates(plant):
        union |= cand.bounded_language(depth, marked_only=True, cap=depth).strings
    return StringSample(frozenset(union), depth)


def oracle_compare(plant: Automaton, depth: int | None = None) -> PropertyReport:
    """Bounded-language equality between the algorithm's supervisor and the
    brute-force supremal result."""
    if depth is None:
        depth = default_depth(plant)
    expected = brute_force_supremal(plant, depth)
    result = synthesize(plant, MODE_FC)
    if result.supervisor is None:
        actual: frozenset[tuple[str, ...]] = frozenset()
    else:
        actual = result.supervisor.bounded_language(
            depth, marked_only=True, cap=depth
        ).strings
    witnesses: list[Witness] = []
    for clause, diff in (
        ("algorithm-only-string", actual - expected.strings),
        ("oracle-only-string", expected.strings - actual),
    ):
        for s in sorted(diff, key=lambda t: (len(t), t)):
            witnesses.append(Witness(format_string(s), None, clause))
    return PropertyReport(not witnesses, tuple(witnesses), "oracle-agreement", depth=depth)
