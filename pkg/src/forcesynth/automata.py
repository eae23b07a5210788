"""Deterministic finite automata over attributed alphabets.

States are plain strings.  Alphabets attach two independent flags to every
event: ``controllable`` (the supervisor may disable it) and ``forcible`` (an
external agent may force it, preempting everything else).  All types are
immutable after construction and safe to share between threads; callers must
treat returned mappings as read-only.

Set-valued outputs are produced in lexicographic order so that repeated runs
are byte-reproducible.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DepthCapExceeded, ModelError

#: Default bound for explicit language enumeration.  Enumeration is
#: exponential and only meant for tests and oracles.
DEFAULT_DEPTH_CAP = 12
DEPTH_CAP_ENV = "FORCESYNTH_DEPTH_CAP"


def depth_cap() -> int:
    """Active enumeration cap, overridable via ``FORCESYNTH_DEPTH_CAP``."""
    raw = os.environ.get(DEPTH_CAP_ENV)
    if raw is None:
        return DEFAULT_DEPTH_CAP
    try:
        return int(raw)
    except ValueError:
        raise ModelError(f"invalid {DEPTH_CAP_ENV} value: {raw!r}") from None


def format_string(seq: Sequence[str]) -> str:
    """Human-readable form of an event sequence; the empty string prints as ε."""
    return ".".join(seq) if seq else "ε"


@dataclass(frozen=True)
class Event:
    """A named event with controllability and forcibility attributes.

    The two flags are independent: forcible-controllable and
    forcible-uncontrollable events are both legal.
    """

    name: str
    controllable: bool = True
    forcible: bool = False

    def __post_init__(self) -> None:
        if not self.name:
            raise ModelError("event name must be nonempty")


class Alphabet:
    """Ordered set of uniquely named events.

    The ``controllable`` flag induces the partition into controllable and
    uncontrollable events; ``forcible`` marks an arbitrary subset.
    """

    def __init__(self, events: Iterable[Event]):
        evs = tuple(events)
        by_name: dict[str, Event] = {}
        for e in evs:
            if e.name in by_name:
                raise ModelError(f"duplicate event name: {e.name!r}")
            by_name[e.name] = e
        self._events = evs
        self._by_name = by_name

    @property
    def events(self) -> tuple[Event, ...]:
        return self._events

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self._events)

    @cached_property
    def controllable(self) -> frozenset[str]:
        return frozenset(e.name for e in self._events if e.controllable)

    @cached_property
    def uncontrollable(self) -> frozenset[str]:
        return frozenset(e.name for e in self._events if not e.controllable)

    @cached_property
    def forcible(self) -> frozenset[str]:
        return frozenset(e.name for e in self._events if e.forcible)

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Event:
        try:
            return self._by_name[name]
        except KeyError:
            raise ModelError(f"unknown event: {name!r}") from None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self._events == other._events

    def __hash__(self) -> int:
        return hash(self._events)

    def __repr__(self) -> str:
        return f"Alphabet({list(self._events)!r})"

    def merge(self, other: "Alphabet") -> "Alphabet":
        """Union by name; same-named events must carry identical attributes."""
        merged = list(self._events)
        seen = dict(self._by_name)
        for e in other:
            old = seen.get(e.name)
            if old is None:
                merged.append(e)
                seen[e.name] = e
            elif old != e:
                raise ModelError(
                    f"alphabet mismatch: event {e.name!r} declared with different attributes"
                )
        return Alphabet(merged)

    def with_forcible(self, names: Iterable[str]) -> "Alphabet":
        """Copy of this alphabet with the forcible set replaced by ``names``."""
        wanted = set(names)
        unknown = wanted - set(self._by_name)
        if unknown:
            raise ModelError(f"unknown event: {sorted(unknown)[0]!r}")
        return Alphabet(
            Event(e.name, e.controllable, e.name in wanted) for e in self._events
        )


@dataclass(frozen=True)
class StringSample:
    """A finite set of event-name sequences with a maximum-length bound.

    ``depth`` bounds the length of every member; it need not be attained.
    When the sample stands for a prefix-closed language, prefix-consistency
    is the caller's obligation (``bounded_language`` guarantees it).
    """

    strings: frozenset[tuple[str, ...]]
    depth: int

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ModelError("sample depth must be nonnegative")
        for s in self.strings:
            if len(s) > self.depth:
                raise ModelError(
                    f"sample string longer than depth {self.depth}: {format_string(s)}"
                )

    @classmethod
    def of(
        cls, strings: Iterable[Sequence[str]], depth: int | None = None
    ) -> "StringSample":
        """Build a sample; the default depth leaves one step of headroom so
        one-event continuations of the longest member stay within bounds."""
        tups = frozenset(tuple(s) for s in strings)
        if depth is None:
            depth = max((len(s) for s in tups), default=0) + 1
        return cls(tups, depth)

    @cached_property
    def closure(self) -> frozenset[tuple[str, ...]]:
        """Prefix closure of the members."""
        out: set[tuple[str, ...]] = set()
        for s in self.strings:
            for i in range(len(s) + 1):
                out.add(s[:i])
        return frozenset(out)

    @property
    def is_prefix_closed(self) -> bool:
        return self.closure == self.strings

    def sorted(self) -> list[tuple[str, ...]]:
        return sorted(self.strings, key=lambda s: (len(s), s))

    def __contains__(self, seq: object) -> bool:
        return tuple(seq) in self.strings  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.strings)


class Automaton:
    """A deterministic finite automaton with a partial transition function.

    ``transitions`` maps ``(state, event_name)`` to a target state; at most
    one target per pair (nondeterministic input is rejected, not
    determinized).  ``events`` is the automaton's declared sub-alphabet, used
    for synchronization and plantification; it defaults to the events that
    actually occur on transitions.  Marked states outside the reachable set
    are retained; pruning is an explicit choice of the caller.
    """

    def __init__(
        self,
        name: str,
        alphabet: Alphabet,
        states: Iterable[str],
        initial: str,
        marked: Iterable[str],
        transitions: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
        events: Iterable[str] | None = None,
    ):
        state_list = list(states)
        state_set = set(state_list)
        if not state_list:
            raise ModelError(f"automaton {name!r} has no states")
        if len(state_set) != len(state_list):
            dup = next(s for i, s in enumerate(state_list) if s in state_list[:i])
            raise ModelError(f"duplicate state: {dup!r}")
        if initial not in state_set:
            raise ModelError(f"initial state not found: {initial!r}")

        marked_set = frozenset(marked)
        stray = marked_set - state_set
        if stray:
            raise ModelError(f"marked state not found: {sorted(stray)[0]!r}")

        if isinstance(transitions, Mapping):
            triples = [(s, e, t) for (s, e), t in transitions.items()]
        else:
            triples = [tuple(tr) for tr in transitions]  # type: ignore[misc]
        trans: dict[tuple[str, str], str] = {}
        for src, ev, dst in sorted(triples):
            if src not in state_set:
                raise ModelError(f"transition source not found: {src!r}")
            if dst not in state_set:
                raise ModelError(f"transition target not found: {dst!r}")
            if ev not in alphabet:
                raise ModelError(f"transition event not in alphabet: {ev!r}")
            if (src, ev) in trans:
                if trans[(src, ev)] == dst:
                    raise ModelError(f"duplicate transition: ({src!r}, {ev!r})")
                raise ModelError(
                    f"nondeterministic transitions from {src!r} on {ev!r}"
                )
            trans[(src, ev)] = dst

        used = {ev for (_, ev) in trans}
        if events is None:
            declared = tuple(n for n in alphabet.names if n in used)
        else:
            declared = tuple(events)
            declared_set = set(declared)
            if len(declared_set) != len(declared):
                raise ModelError(f"duplicate event in sub-alphabet of {name!r}")
            for ev in declared:
                if ev not in alphabet:
                    raise ModelError(f"sub-alphabet event not in alphabet: {ev!r}")
            missing = used - declared_set
            if missing:
                raise ModelError(
                    f"transition event {sorted(missing)[0]!r} missing from sub-alphabet of {name!r}"
                )

        out: dict[str, dict[str, str]] = {s: {} for s in state_list}
        for (src, ev), dst in trans.items():
            out[src][ev] = dst

        self._name = name
        self._alphabet = alphabet
        self._states = tuple(state_list)
        self._state_set = frozenset(state_set)
        self._initial = initial
        self._marked = marked_set
        self._transitions = trans
        self._events = declared
        self._out = out
        self._reachable: frozenset[str] | None = None
        self._coreachable: frozenset[str] | None = None

    # -- structure ---------------------------------------------------------

    @property
    def name(self) -> str:
        return self._name

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def states(self) -> tuple[str, ...]:
        return self._states

    @property
    def state_set(self) -> frozenset[str]:
        return self._state_set

    @property
    def initial(self) -> str:
        return self._initial

    @property
    def marked(self) -> frozenset[str]:
        return self._marked

    @property
    def transitions(self) -> Mapping[tuple[str, str], str]:
        return self._transitions

    @property
    def events(self) -> tuple[str, ...]:
        """Declared sub-alphabet (event names)."""
        return self._events

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self._name == other._name
            and self._alphabet == other._alphabet
            and self._states == other._states
            and self._initial == other._initial
            and self._marked == other._marked
            and self._transitions == other._transitions
            and self._events == other._events
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"Automaton({self._name!r}, states={len(self._states)}, "
            f"transitions={len(self._transitions)})"
        )

    # -- basic queries -----------------------------------------------------

    def out(self, state: str) -> Mapping[str, str]:
        """Outgoing transitions of ``state`` as an event->target mapping."""
        try:
            return self._out[state]
        except KeyError:
            raise ModelError(f"state not found: {state!r}") from None

    def target(self, state: str, event: str) -> str | None:
        return self._transitions.get((state, event))

    def eligible_events(self, state: str) -> tuple[Event, ...]:
        """Events defined at ``state``, in name order."""
        out = self.out(state)
        return tuple(self._alphabet[e] for e in sorted(out))

    def eligible_names(self, state: str) -> tuple[str, ...]:
        return tuple(sorted(self.out(state)))

    def run(self, seq: Sequence[str], start: str | None = None) -> str | None:
        """State reached from ``start`` (default: initial) on ``seq``;
        ``None`` once a transition is missing."""
        state = self._initial if start is None else start
        for ev in seq:
            nxt = self._transitions.get((state, ev))
            if nxt is None:
                return None
            state = nxt
        return state

    # -- reachability ------------------------------------------------------

    def reachable(self) -> frozenset[str]:
        """States reachable from the initial state."""
        if self._reachable is None:
            seen = {self._initial}
            frontier = [self._initial]
            while frontier:
                q = frontier.pop()
                for t in self._out[q].values():
                    if t not in seen:
                        seen.add(t)
                        frontier.append(t)
            self._reachable = frozenset(seen)
        return self._reachable

    def coreachable(self) -> frozenset[str]:
        """States from which some marked state is reachable."""
        if self._coreachable is None:
            rev: dict[str, list[str]] = {s: [] for s in self._states}
            for (src, _), dst in self._transitions.items():
                rev[dst].append(src)
            seen = set(self._marked)
            frontier = list(seen)
            while frontier:
                q = frontier.pop()
                for s in rev[q]:
                    if s not in seen:
                        seen.add(s)
                        frontier.append(s)
            self._coreachable = frozenset(seen)
        return self._coreachable

    def is_nonblocking(self) -> bool:
        """True iff every reachable state can still reach a marked state."""
        return self.reachable() <= self.coreachable()

    # -- language ----------------------------------------------------------

    def bounded_language(
        self, depth: int, marked_only: bool = False, cap: int | None = None
    ) -> StringSample:
        """All strings of length <= ``depth`` generated (or marked) by this
        automaton.  Exponential; guarded by the depth cap."""
        limit = depth_cap() if cap is None else cap
        if depth < 0:
            raise ModelError("depth must be nonnegative")
        if depth > limit:
            raise DepthCapExceeded(f"depth cap exceeded: depth {depth} > cap {limit}")
        found: set[tuple[str, ...]] = set()
        level: list[tuple[tuple[str, ...], str]] = [((), self._initial)]
        while level:
            nxt: list[tuple[tuple[str, ...], str]] = []
            for seq, q in level:
                if not marked_only or q in self._marked:
                    found.add(seq)
                if len(seq) < depth:
                    for ev in sorted(self._out[q]):
                        nxt.append((seq + (ev,), self._out[q][ev]))
            level = nxt
        return StringSample(frozenset(found), depth)

    # -- relations ---------------------------------------------------------

    def is_subautomaton_of(self, other: "Automaton") -> bool:
        """State-subautomaton test: states, transitions and marking are
        restrictions of ``other`` and the initial states coincide."""
        if self._initial != other._initial:
            return False
        if not self._state_set <= other._state_set:
            return False
        for key, dst in self._transitions.items():
            if other._transitions.get(key) != dst:
                return False
        return self._marked == other._marked & self._state_set

    def with_alphabet(self, alphabet: Alphabet) -> "Automaton":
        """Rebuild against another alphabet (same event names)."""
        return Automaton(
            self._name,
            alphabet,
            self._states,
            self._initial,
            self._marked,
            self._transitions,
            self._events,
        )


def induced_subautomaton(
    plant: Automaton,
    states: Iterable[str],
    transitions: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
    name: str | None = None,
    prune_unreachable: bool = False,
) -> Automaton:
    """Subautomaton of ``plant`` on the given states and transitions.

    Marking is inherited (``plant.marked`` restricted to the kept states).
    With ``prune_unreachable`` the result is restricted to the part reachable
    from the initial state.
    """
    keep = set(states)
    if plant.initial not in keep:
        raise ModelError(f"initial state not found: {plant.initial!r}")
    if isinstance(transitions, Mapping):
        trans = {k: v for k, v in transitions.items()}
    else:
        trans = {(s, e): t for s, e, t in transitions}
    trans = {
        (s, e): t for (s, e), t in trans.items() if s in keep and t in keep
    }
    if prune_unreachable:
        seen = {plant.initial}
        frontier = [plant.initial]
        adj: dict[str, list[str]] = {}
        for (s, _), t in trans.items():
            adj.setdefault(s, []).append(t)
        while frontier:
            q = frontier.pop()
            for t in adj.get(q, ()):
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        keep &= seen
        trans = {k: v for k, v in trans.items() if k[0] in keep}
    ordered = [s for s in plant.states if s in keep]
    return Automaton(
        name if name is not None else plant.name,
        plant.alphabet,
        ordered,
        plant.initial,
        plant.marked & keep,
        trans,
        events=plant.events,
    )


def canonical_form(
    automaton: Automaton, forcing_states: Iterable[str] = ()
) -> tuple:
    """Canonical description of the reachable part, invariant under state
    renaming.  Two deterministic automata are isomorphic on their reachable
    parts iff their canonical forms coincide."""
    forcing = set(forcing_states)
    index: dict[str, int] = {automaton.initial: 0}
    order = [automaton.initial]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for ev in sorted(automaton.out(q)):
            t = automaton.out(q)[ev]
            if t not in index:
                index[t] = len(order)
                order.append(t)
    edges = tuple(
        sorted(
            (index[s], e, index[t])
            for (s, e), t in automaton.transitions.items()
            if s in index
        )
    )
    return (
        len(order),
        tuple(sorted(index[q] for q in automaton.marked if q in index)),
        tuple(sorted(index[q] for q in forcing if q in index)),
        edges,
    )


def isomorphic(
    a: Automaton,
    b: Automaton,
    forcing_a: Iterable[str] = (),
    forcing_b: Iterable[str] = (),
) -> bool:
    """Isomorphism up to state renaming, on the reachable parts."""
    return canonical_form(a, forcing_a) == canonical_form(b, forcing_b)
