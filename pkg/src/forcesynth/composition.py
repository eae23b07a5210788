"""Synchronous products and plantification of specification automata.

Synchronization is over each automaton's declared sub-alphabet: an event
shared by several components fires only when all of them enable it and
advances all of them; an event private to one component interleaves freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Alphabet, Automaton
from .errors import ModelError

DUMP_STATE = "⊥"  # ⊥


@dataclass(frozen=True)
class ProductState:
    """A product state: the tuple of component states and its joined id."""

    components: tuple[str, ...]
    id: str


def _join_ids(tuples: Sequence[tuple[str, ...]]) -> dict[tuple[str, ...], str]:
    """Canonical product-state names: plain concatenation while every
    component name is a single character, dot-joined otherwise."""
    flat = all(len(part) == 1 for tup in tuples for part in tup)
    sep = "" if flat else "."
    ids = {tup: sep.join(tup) for tup in tuples}
    # Dot-joining multi-character names can collide in principle; make the
    # result unique deterministically rather than failing.
    seen: dict[str, int] = {}
    for tup in tuples:
        base = ids[tup]
        n = seen.get(base, 0)
        seen[base] = n + 1
        if n:
            ids[tup] = f"{base}#{n}"
    return ids


def sync_product(components: Sequence[Automaton], name: str | None = None) -> Automaton:
    """Full synchronous composition of ``components``.

    Only reachable product states are emitted, in breadth-first discovery
    order; a product state is marked iff every component is marked.
    """
    if not components:
        raise ModelError("empty component list")
    alphabet: Alphabet = components[0].alphabet
    for comp in components[1:]:
        alphabet = alphabet.merge(comp.alphabet)

    declared: list[str] = []
    declared_seen: set[str] = set()
    for comp in components:
        for ev in comp.events:
            if ev not in declared_seen:
                declared_seen.add(ev)
                declared.append(ev)
    participants = {
        ev: tuple(i for i, comp in enumerate(components) if ev in comp.events)
        for ev in declared
    }
    event_order = sorted(declared)

    init = tuple(comp.initial for comp in components)
    order: list[tuple[str, ...]] = [init]
    index = {init}
    edges: list[tuple[tuple[str, ...], str, tuple[str, ...]]] = []
    i = 0
    while i < len(order):
        src = order[i]
        i += 1
        for ev in event_order:
            dst = list(src)
            for ci in participants[ev]:
                nxt = components[ci].target(src[ci], ev)
                if nxt is None:
                    break
                dst[ci] = nxt
            else:
                tgt = tuple(dst)
                edges.append((src, ev, tgt))
                if tgt not in index:
                    index.add(tgt)
                    order.append(tgt)

    ids = _join_ids(order)
    marked = frozenset(
        ids[tup]
        for tup in order
        if all(tup[ci] in comp.marked for ci, comp in enumerate(components))
    )
    if name is None:
        name = "x".join(comp.name for comp in components)
    return Automaton(
        name,
        alphabet,
        [ids[tup] for tup in order],
        ids[init],
        marked,
        [(ids[s], ev, ids[t]) for s, ev, t in edges],
        events=tuple(declared),
    )


def plantify(spec: Automaton, dump: str = DUMP_STATE) -> Automaton:
    """Turn a specification automaton into a plant component.

    A fresh unmarked dump state is added (always, even when unreachable) and
    every uncontrollable event of the spec's declared alphabet that is
    undefined at some state is routed there.  Forcibility plays no role here;
    controllability alone drives the transformation.
    """
    while dump in spec.state_set:
        dump += "'"
    uncontrollable = sorted(
        ev for ev in spec.events if not spec.alphabet[ev].controllable
    )
    trans = dict(spec.transitions)
    for q in spec.states:
        for ev in uncontrollable:
            if (q, ev) not in trans:
                trans[(q, ev)] = dump
    return Automaton(
        f"{spec.name}_plantified",
        spec.alphabet,
        spec.states + (dump,),
        spec.initial,
        spec.marked,
        trans,
        events=spec.events,
    )
