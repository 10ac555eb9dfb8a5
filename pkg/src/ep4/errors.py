"""Exception types raised by the ep4 library.

All library errors derive from :class:`Ep4Error` so callers can catch one
base class.  Names mirror the failure they report; most carry a short
human-readable message and nothing else.
"""


class Ep4Error(Exception):
    """Base class for all ep4 errors."""


# --- map construction -------------------------------------------------------

class SelfLoop(Ep4Error):
    """An edge joins a vertex to itself; loops are rejected at construction."""


class RotationMismatch(Ep4Error):
    """A rotation lists a dart at the wrong vertex, twice, or not at all."""


class NonPlanarEmbedding(Ep4Error):
    """The rotation system encodes positive genus (Euler check failed)."""


class NonPlanarInput(Ep4Error):
    """The abstract input graph is not planar."""


# --- parity / transversal ---------------------------------------------------

class NotACycle(Ep4Error):
    """The given walk is not a simple cycle of the map."""


class OddCardinality(Ep4Error):
    """A face set that must have even cardinality does not."""


class PreconditionViolated(Ep4Error):
    """A documented precondition of the operation does not hold."""


# --- clouds -----------------------------------------------------------------

class MissingOddFace(Ep4Error):
    """The special face set does not contain every odd face."""


class PackingNotOne(Ep4Error):
    """A face set expected to have packing number 1 contains a disjoint pair."""


class OddSubset(Ep4Error):
    """A face subset that must have even cardinality does not."""


# --- conflict graph ---------------------------------------------------------

class Unsatisfiable(Ep4Error):
    """No qualifying low-degree node exists; signals an embedding bug."""


# --- surgery ----------------------------------------------------------------

class NotSharedVertex(Ep4Error):
    """The merge vertex does not lie on both faces."""


class SameFace(Ep4Error):
    """Attempted to merge a face with itself."""


class DisconnectedFaceSet(Ep4Error):
    """The face set is not connected through shared vertices."""


class UnknownVertex(Ep4Error):
    """A vertex id has no correspondence entry in the trace."""


class ResidualParityFailure(Ep4Error):
    """A parity-odd component misses the merged face set; upstream bug."""


# --- solver -----------------------------------------------------------------

class CaseExhaustion(Ep4Error):
    """No case of the cloud analysis applied; signals a bug."""


class SubsetNotInChoice(Ep4Error):
    """The requested subset is not contained in the chosen face set."""


class NoOddCycleInFace(Ep4Error):
    """No odd cycle found inside an odd face boundary; unreachable."""


# --- oracles ----------------------------------------------------------------

class TooManyCycles(Ep4Error):
    """Cycle enumeration exceeded the configured cap."""


class TooLarge(Ep4Error):
    """The instance exceeds the configured exact-search size bound."""


class BudgetExceeded(Ep4Error):
    """An exact search exceeded its configured node budget."""


# --- i/o --------------------------------------------------------------------

class InputError(Ep4Error):
    """Malformed graph or certificate input."""
