"""Seeded random models for cross-validation and benchmarks.

Everything here is deterministic given the seed: iteration is over lists,
never over unordered sets.
"""
from __future__ import annotations

import random

from .automata import Alphabet, Automaton, Event, StringSample


def random_plant(
    rng: random.Random,
    max_states: int = 4,
    max_events: int = 4,
    density: float = 0.35,
    marked_prob: float = 0.5,
    controllable_prob: float = 0.5,
    forcible_prob: float = 0.4,
    n_states: int | None = None,
    n_events: int | None = None,
    deadlock_prob: float = 0.0,
    name: str = "random",
) -> Automaton:
    """A random deterministic plant with mixed event attributes."""
    n = n_states if n_states is not None else rng.randint(1, max_states)
    m = n_events if n_events is not None else rng.randint(1, max_events)
    states = [f"s{i}" for i in range(n)]
    events = [
        Event(
            f"e{j}",
            controllable=rng.random() < controllable_prob,
            forcible=rng.random() < forcible_prob,
        )
        for j in range(m)
    ]
    alphabet = Alphabet(events)
    transitions: dict[tuple[str, str], str] = {}
    for s in states:
        if deadlock_prob and rng.random() < deadlock_prob:
            continue
        for e in events:
            if rng.random() < density:
                transitions[(s, e.name)] = states[rng.randrange(n)]
    marked = [s for s in states if rng.random() < marked_prob]
    return Automaton(
        name,
        alphabet,
        states,
        states[0],
        marked,
        transitions,
        events=[e.name for e in events],
    )


def corpus(seed: int, count: int, **kwargs) -> list[Automaton]:
    """A reproducible list of random plants."""
    rng = random.Random(seed)
    return [
        random_plant(rng, name=f"rand{i:03d}", **kwargs) for i in range(count)
    ]


def random_sublanguage(
    rng: random.Random, plant: Automaton, depth: int, keep_prob: float = 0.6
) -> StringSample:
    """A random subset of the plant's bounded marked language."""
    marked = plant.bounded_language(depth, marked_only=True, cap=depth)
    picked = [s for s in marked.sorted() if rng.random() < keep_prob]
    return StringSample.of(picked, depth=depth + 1)


def benchmark_plant(
    rng: random.Random,
    n_states: int,
    n_events: int = 8,
    density: float = 0.5,
    forcible_count: int = 2,
    uncontrollable_count: int = 4,
    marked_prob: float = 0.1,
    deadlock_prob: float = 0.05,
    name: str = "bench",
) -> Automaton:
    """Larger plants with a fixed alphabet profile, for runtime scaling."""
    states = [f"s{i}" for i in range(n_states)]
    events = []
    for j in range(n_events):
        controllable = j >= uncontrollable_count
        forcible = controllable and j < uncontrollable_count + forcible_count
        events.append(Event(f"e{j}", controllable, forcible))
    alphabet = Alphabet(events)
    transitions: dict[tuple[str, str], str] = {}
    for s in states:
        if rng.random() < deadlock_prob:
            continue
        for e in events:
            if rng.random() < density:
                transitions[(s, e.name)] = states[rng.randrange(n_states)]
    marked = [s for s in states if rng.random() < marked_prob] or [states[0]]
    return Automaton(
        name,
        alphabet,
        states,
        states[0],
        marked,
        transitions,
        events=[e.name for e in events],
    )
