"""Shared fixtures: the two case studies, hand-transcribed expected results,
and the small counterexample plants."""
from __future__ import annotations

import pytest

from forcesynth import (
    Alphabet,
    Automaton,
    Event,
    build_plant,
    builtin_model_path,
    load,
)

CORPUS_SEED = 20260809


# -- manufacturing line --------------------------------------------------

@pytest.fixture(scope="session")
def mfg_alphabet() -> Alphabet:
    return Alphabet(
        [
            Event("start_M1", True, False),
            Event("end_M1", False, False),
            Event("start_M2", True, True),
            Event("end_M2", False, False),
        ]
    )


@pytest.fixture(scope="session")
def mfg_m1(mfg_alphabet) -> Automaton:
    return Automaton(
        "M1", mfg_alphabet, ["I", "B"], "I", ["I"],
        [("I", "start_M1", "B"), ("B", "end_M1", "I")],
        events=["start_M1", "end_M1"],
    )


@pytest.fixture(scope="session")
def mfg_m2(mfg_alphabet) -> Automaton:
    return Automaton(
        "M2", mfg_alphabet, ["I", "B"], "I", ["I"],
        [("I", "start_M2", "B"), ("B", "end_M2", "I")],
        events=["start_M2", "end_M2"],
    )


@pytest.fixture(scope="session")
def mfg_spec(mfg_alphabet) -> Automaton:
    return Automaton(
        "R", mfg_alphabet, ["0", "1", "2"], "0", ["0"],
        [
            ("0", "start_M1", "0"),
            ("0", "end_M1", "1"),
            ("0", "end_M2", "0"),
            ("1", "start_M1", "1"),
            ("1", "start_M2", "0"),
            ("1", "end_M1", "2"),
            ("1", "end_M2", "1"),
        ],
        events=["start_M1", "end_M1", "start_M2", "end_M2"],
    )


FIG4_TRANSITIONS = [
    ("II0", "start_M1", "BI0"),
    ("BI0", "end_M1", "II1"),
    ("II1", "start_M1", "BI1"),
    ("II1", "start_M2", "IB0"),
    ("IB0", "start_M1", "BB0"),
    ("IB0", "end_M2", "II0"),
    ("BB0", "end_M1", "IB1"),
    ("BB0", "end_M2", "BI0"),
    ("BI1", "start_M2", "BB0"),
    ("BI1", "end_M1", "II2"),
    ("IB1", "start_M1", "BB1"),
    ("IB1", "end_M2", "II1"),
    ("BB1", "end_M1", "IB2"),
    ("BB1", "end_M2", "BI1"),
]

FIG4_STATES = ["II0", "BI0", "II1", "BI1", "IB0", "II2", "BB0", "IB1", "BB1", "IB2"]


@pytest.fixture(scope="session")
def fig4_product(mfg_alphabet) -> Automaton:
    """The ten-state composed plant, transcribed by hand (independently of
    the composition module)."""
    return Automaton(
        "fig4", mfg_alphabet, FIG4_STATES, "II0", ["II0"], FIG4_TRANSITIONS
    )


@pytest.fixture(scope="session")
def blue_supervisor(mfg_alphabet) -> Automaton:
    """Expected supervisor for forcible {start_M2}: seven states, BI1 keeps
    only its forcible transition."""
    keep = {"II0", "BI0", "II1", "BI1", "IB0", "BB0", "IB1"}
    trans = [
        (s, e, t)
        for (s, e, t) in FIG4_TRANSITIONS
        if s in keep and t in keep and not (s == "BI1" and e != "start_M2")
        and not (s == "IB1" and e == "start_M1")
    ]
    return Automaton(
        "blue", mfg_alphabet, [q for q in FIG4_STATES if q in keep], "II0", ["II0"], trans
    )


@pytest.fixture(scope="session")
def mfg_model():
    return load(builtin_model_path("manufacturing_line"))


@pytest.fixture(scope="session")
def mfg_plant(mfg_model) -> Automaton:
    return build_plant(mfg_model)


# -- small factory -------------------------------------------------------

@pytest.fixture(scope="session")
def factory_model():
    return load(builtin_model_path("small_factory"))


@pytest.fixture(scope="session")
def factory_plant(factory_model) -> Automaton:
    return build_plant(factory_model)


FIG7_EDGES = [
    ("s1", "start_M1", "s2"),
    ("s2", "break_M1", "s3"),
    ("s2", "end_M1", "s4"),
    ("s3", "repair_M1", "s1"),
    ("s4", "start_M2", "s5"),
    ("s4", "start_M1", "s6"),
    ("s5", "break_M2", "s10"),
    ("s5", "end_M2", "s1"),
    ("s5", "start_M1", "s7"),
    ("s6", "start_M2", "s7"),
    ("s7", "break_M2", "s13"),
    ("s7", "end_M2", "s2"),
    ("s7", "break_M1", "s12"),
    ("s7", "end_M1", "s14"),
    ("s10", "repair_M2", "s1"),
    ("s10", "start_M1", "s13"),
    ("s12", "break_M2", "s16"),
    ("s12", "end_M2", "s3"),
    ("s12", "repair_M1", "s5"),
    ("s13", "break_M1", "s16"),
    ("s13", "end_M1", "s17"),
    ("s13", "repair_M2", "s2"),
    ("s14", "break_M2", "s17"),
    ("s14", "end_M2", "s4"),
    ("s16", "repair_M2", "s3"),
    ("s17", "repair_M2", "s4"),
    ("s17", "start_M1", "s19"),
    ("s19", "repair_M2", "s6"),
]

#: The red edges: removed together with the green (forcing) states in the
#: non-forcing supervisor.
FIG7_RED = [
    ("s4", "start_M1", "s6"),
    ("s6", "start_M2", "s7"),
    ("s17", "start_M1", "s19"),
    ("s19", "repair_M2", "s6"),
]

FIG7_GREEN = ["s6", "s19"]

FIG7_STATES = [
    "s1", "s2", "s3", "s4", "s5", "s6", "s7",
    "s10", "s12", "s13", "s14", "s16", "s17", "s19",
]


@pytest.fixture(scope="session")
def fig7_supervisor(factory_model) -> Automaton:
    """Expected forcing supervisor of the small factory, transcribed by hand."""
    return Automaton(
        "fig7", factory_model.alphabet, FIG7_STATES, "s1", ["s1"], FIG7_EDGES
    )


@pytest.fixture(scope="session")
def fig7_classic(factory_model) -> Automaton:
    keep = [q for q in FIG7_STATES if q not in FIG7_GREEN]
    red = set(FIG7_RED)
    edges = [e for e in FIG7_EDGES if e not in red]
    return Automaton(
        "fig7_classic", factory_model.alphabet, keep, "s1", ["s1"], edges
    )


# -- counterexample plants -----------------------------------------------

@pytest.fixture(scope="session")
def ex1_alphabet() -> Alphabet:
    # No controllable events: forcible-controllability and forcibility agree.
    return Alphabet(
        [
            Event("f1", False, True),
            Event("f2", False, True),
            Event("u", False, False),
        ]
    )


@pytest.fixture(scope="session")
def ex1_plant(ex1_alphabet) -> Automaton:
    """Closed and marked language both {ε, f1, f2, u}."""
    return Automaton(
        "ex1", ex1_alphabet, ["q0", "q1", "q2", "q3"], "q0",
        ["q0", "q1", "q2", "q3"],
        [("q0", "f1", "q1"), ("q0", "f2", "q2"), ("q0", "u", "q3")],
    )


@pytest.fixture(scope="session")
def ex1_blocking_plant(ex1_alphabet) -> Automaton:
    """Same structure with the u-successor unmarked, so keeping u blocks."""
    return Automaton(
        "ex1b", ex1_alphabet, ["q0", "q1", "q2", "q3"], "q0", ["q0", "q1", "q2"],
        [("q0", "f1", "q1"), ("q0", "f2", "q2"), ("q0", "u", "q3")],
    )


@pytest.fixture(scope="session")
def triple_alphabet() -> Alphabet:
    return Alphabet([Event("f", True, True), Event("u", False, False)])


@pytest.fixture(scope="session")
def triple_p2(triple_alphabet) -> Automaton:
    """Marked language {ε, f}: the outer language of the first inclusion."""
    return Automaton(
        "P2", triple_alphabet, ["a0", "a1"], "a0", ["a0", "a1"],
        [("a0", "f", "a1")],
    )


@pytest.fixture(scope="session")
def triple_p3(triple_alphabet) -> Automaton:
    """Marked language {ε, f, u}: the outer language of the second inclusion."""
    return Automaton(
        "P3", triple_alphabet, ["b0", "b1", "b2"], "b0", ["b0", "b1", "b2"],
        [("b0", "f", "b1"), ("b0", "u", "b2")],
    )


@pytest.fixture(scope="session")
def stuck_plant() -> Automaton:
    """A forcing state whose only forcible escape dies one outer iteration
    later; synthesis must terminate with the empty supervisor."""
    alphabet = Alphabet(
        [
            Event("u1", False, False),
            Event("u2", False, False),
            Event("u4", False, False),
            Event("f1", True, True),
            Event("c", True, False),
            Event("c2", True, False),
        ]
    )
    return Automaton(
        "stuck", alphabet, ["q", "r", "m", "w", "y2", "d1", "d2"], "q", ["m", "y2"],
        [
            ("q", "u1", "d1"),
            ("q", "f1", "r"),
            ("r", "c", "m"),
            ("r", "u2", "w"),
            ("w", "c2", "y2"),
            ("y2", "u4", "d2"),
        ],
    )
