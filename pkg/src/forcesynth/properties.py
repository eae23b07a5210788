"""Checkers for the three sublanguage properties and their state-level form.

The language-level checkers work on explicit finite samples.  They are exact
when the sample is the whole (finite) language and its depth leaves one step
of headroom; for depth-bounded slices of larger languages they are an
approximation whose quantification horizon is recorded in the report.  A
narrower ``horizon`` may be passed to keep boundary strings out of the
quantification (continuations of interior strings are then decided exactly
within the sample).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .automata import Automaton, StringSample, format_string
from .errors import NotASublanguage, NotASubautomaton

CONTROLLABLE_OK = "controllable-ok"
FORCING_OK = "forcing-ok"
VIOLATION = "violation"


@dataclass(frozen=True)
class Witness:
    """One counterexample record: the offending string or state, the event
    that exhibits the violation (when there is one), and the violated clause."""

    subject: str
    event: str | None
    clause: str


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of a property check; ``holds`` iff there are no witnesses."""

    holds: bool
    witnesses: tuple[Witness, ...]
    name: str
    depth: int | None = None
    classification: Mapping[str, str] | None = None

    def __post_init__(self) -> None:
        assert self.holds == (len(self.witnesses) == 0)

    def __bool__(self) -> bool:
        return self.holds


def enabled_after(sample: StringSample, s: tuple[str, ...]) -> frozenset[str]:
    """Events that continue ``s`` inside the sample's prefix closure."""
    cl = sample.closure
    return frozenset(
        t[-1] for t in cl if len(t) == len(s) + 1 and t[: len(s)] == s
    )


def _validate_sample(sample: StringSample, plant: Automaton) -> None:
    for s in sample.sorted():
        state = plant.run(s)
        if state is None or state not in plant.marked:
            raise NotASublanguage(
                f"specification not a sublanguage: {format_string(s)}"
            )


def _quantified(sample: StringSample, horizon: int | None) -> list[tuple[str, ...]]:
    bound = sample.depth if horizon is None else min(horizon, sample.depth)
    return [
        s
        for s in sorted(sample.closure, key=lambda t: (len(t), t))
        if len(s) < bound
    ]


def check_controllable(
    sample: StringSample, plant: Automaton, horizon: int | None = None
) -> PropertyReport:
    """Closure under every plant-eligible uncontrollable continuation."""
    _validate_sample(sample, plant)
    cl = sample.closure
    unc = sorted(plant.alphabet.uncontrollable)
    witnesses: list[Witness] = []
    for s in _quantified(sample, horizon):
        state = plant.run(s)
        out = plant.out(state)
        for u in unc:
            if u in out and s + (u,) not in cl:
                witnesses.append(Witness(format_string(s), u, "uncontrollable-escape"))
    return PropertyReport(
        not witnesses, tuple(witnesses), "controllable", depth=sample.depth
    )


def _check_forcing_style(
    sample: StringSample,
    plant: Automaton,
    escape_events: frozenset[str],
    name: str,
    horizon: int | None,
) -> PropertyReport:
    """Shared body of the forcibly-controllable and forcible checkers; they
    differ only in which events may take a string out of the closure."""
    _validate_sample(sample, plant)
    cl = sample.closure
    forcible = plant.alphabet.forcible
    esc = sorted(escape_events)
    nonforcible = [e.name for e in plant.alphabet if e.name not in forcible]
    witnesses: list[Witness] = []
    for s in _quantified(sample, horizon):
        state = plant.run(s)
        out = plant.out(state)
        escaping = [e for e in esc if e in out and s + (e,) not in cl]
        if not escaping:
            continue
        saves = any(s + (f,) in cl for f in forcible)
        keeps_nonforcible = any(s + (n,) in cl for n in nonforcible)
        if saves and not keeps_nonforcible:
            continue
        witnesses.append(Witness(format_string(s), escaping[0], "unforced-escape"))
    return PropertyReport(not witnesses, tuple(witnesses), name, depth=sample.depth)


def check_forcibly_controllable(
    sample: StringSample, plant: Automaton, horizon: int | None = None
) -> PropertyReport:
    """Per string: controllability holds, or some forcible continuation stays
    inside the closure while every non-forcible continuation is excluded."""
    return _check_forcing_style(
        sample, plant, plant.alphabet.uncontrollable, "forcibly-controllable", horizon
    )


def check_forcible(
    sample: StringSample, plant: Automaton, horizon: int | None = None
) -> PropertyReport:
    """Forcibly-controllable with the first clause over all events, not just
    the uncontrollable ones."""
    return _check_forcing_style(
        sample,
        plant,
        frozenset(plant.alphabet.names),
        "forcible",
        horizon,
    )


def check_supervisor_fc(sup: Automaton, plant: Automaton) -> PropertyReport:
    """State-level forcible-controllability of a subautomaton supervisor.

    Every reachable supervisor state must either retain all plant-eligible
    uncontrollable events, or keep a forcible event while defining no
    non-forcible one.  The classification maps each reachable state to
    ``controllable-ok``, ``forcing-ok`` or ``violation``.
    """
    if not sup.is_subautomaton_of(plant):
        raise NotASubautomaton("not a subautomaton")
    unc = plant.alphabet.uncontrollable
    forcible = plant.alphabet.forcible
    classification: dict[str, str] = {}
    witnesses: list[Witness] = []
    for q in sorted(sup.reachable()):
        sout = sup.out(q)
        pout = plant.out(q)
        missing = [u for u in sorted(unc) if u in pout and u not in sout]
        if not missing:
            classification[q] = CONTROLLABLE_OK
            continue
        has_forcible = any(e in forcible for e in sout)
        only_forcible = all(e in forcible for e in sout)
        if has_forcible and only_forcible:
            classification[q] = FORCING_OK
            continue
        classification[q] = VIOLATION
        witnesses.append(Witness(q, missing[0], "unforced-escape"))
    return PropertyReport(
        not witnesses,
        tuple(witnesses),
        "supervisor-forcibly-controllable",
        classification=classification,
    )
