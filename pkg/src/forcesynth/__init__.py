"""Supervisory control synthesis with forcible events.

Plants are deterministic finite automata over alphabets whose events are
controllable or uncontrollable and, independently, forcible.  The toolkit
synthesizes maximally permissive, forcibly-controllable, nonblocking
supervisors; checks the underlying language properties; executes the closed
loop; and cross-validates synthesis against a brute-force oracle.
"""
from .automata import (
    Alphabet,
    Automaton,
    Event,
    StringSample,
    canonical_form,
    depth_cap,
    format_string,
    induced_subautomaton,
    isomorphic,
)
from .composition import ProductState, plantify, sync_product
from .control import (
    DISABLE,
    FORCE,
    ControlDecision,
    LoopState,
    TranscriptEntry,
    decide,
    decide_at,
    initial_state,
    random_walk,
    replay,
    step,
    verify_closed_loop,
)
from .errors import (
    Desynchronized,
    DepthCapExceeded,
    DisabledBySupervisor,
    EnumerationCapExceeded,
    ForcesynthError,
    ModelError,
    NotASublanguage,
    NotASubautomaton,
    NotEligibleInPlant,
    StepRejected,
)
from .model_io import (
    AutomatonEntry,
    ModelFile,
    build_plant,
    builtin_model_path,
    dumps,
    load,
    loads,
    save,
    supervisor_model,
    to_dot,
    with_forcible,
)
from .oracle import admitted_candidates, brute_force_supremal, oracle_compare
from .properties import (
    PropertyReport,
    Witness,
    check_controllable,
    check_forcible,
    check_forcibly_controllable,
    check_supervisor_fc,
)
from .synthesis import (
    MODE_CLASSIC,
    MODE_FC,
    MODE_FORCIBLE,
    MODES,
    IterationSnapshot,
    SynthesisResult,
    bad_forcing_fixpoint,
    nonblocking_fixpoint,
    restrict_transitions,
    synthesize,
    verify_snapshot_invariants,
)

__version__ = "0.1.0"
