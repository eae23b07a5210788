"""Exception types shared across the toolkit."""


class ForcesynthError(Exception):
    """Base class for all toolkit errors."""


class ModelError(ForcesynthError):
    """Invalid model data: unknown references, nondeterminism, bad attributes."""


class DepthCapExceeded(ForcesynthError):
    """Language enumeration was asked to go beyond the configured depth cap."""


class EnumerationCapExceeded(ForcesynthError):
    """Brute-force candidate enumeration beyond the transition cap."""


class NotASublanguage(ForcesynthError):
    """The checked sample is not a sublanguage of the plant's marked language."""


class NotASubautomaton(ForcesynthError):
    """The checked supervisor is not a state-subautomaton of the plant."""


class StepRejected(ForcesynthError):
    """A closed-loop step was refused; ``kind`` tells which side refused it."""

    kind = "rejected"


class DisabledBySupervisor(StepRejected):
    kind = "disabled_by_supervisor"


class NotEligibleInPlant(StepRejected):
    kind = "not_eligible_in_plant"


class Desynchronized(ForcesynthError):
    """Loop state does not replay consistently in plant and supervisor."""
