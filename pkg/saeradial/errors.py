"""Exception hierarchy for sae-radial"""


class SaeError(Exception):
    """Base class for every error raised by the library"""


class DomainError(SaeError, ValueError):
    """An argument lies outside the domain of the operation"""


class RegimeError(DomainError):
    """The potential is not in the regime the operation requires"""

    def __init__(self, regime: str, reason: str):
        self.regime = regime
        self.reason = reason
        super().__init__(f"regime={regime}: {reason}")


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer"""


class NoBoundState(SaeError):
    """The extension parameter admits no bound level"""


class ComplexEnergyError(SaeError):
    """A positive extension parameter would make the level energy complex"""


class NoPole(SaeError):
    """The continued S-matrix has no pole for this extension parameter"""


class PoleOnAxisError(SaeError):
    """The S-matrix denominator vanishes at real momentum"""


class StiffnessError(SaeError):
    """The radial integrator cannot meet its truncation bound"""


class NoSignChange(SaeError):
    """The shooting bracket does not contain a sign change"""


class FitError(SaeError):
    """The asymptotic phase fit did not reach the asymptotic regime"""


class DegenerateError(SaeError):
    """The Wronskian overlap is undefined for equal energies"""
