"""Exception types. Checks report counterexamples instead of raising; these
are reserved for malformed inputs and internal sanity failures."""


class RadlatError(Exception):
    """Base class for all package errors."""


class NotAPoset(RadlatError):
    """Order matrix fails antisymmetry (a cycle); payload is an offending pair."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"antisymmetry fails at pair {pair}")


class NotALattice(RadlatError):
    """Some pair has no unique join or meet; payload is the offending pair."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"pair {pair} has no unique join or meet")


class NotComparable(RadlatError):
    """Interval endpoints are not ordered."""

    def __init__(self, lo, hi):
        self.pair = (lo, hi)
        super().__init__(f"element {lo} is not below element {hi}")


class SizeLimitExceeded(RadlatError):
    """Requested object exceeds the configured size cap."""


class NotStrongerThanOrder(RadlatError):
    """Relation pair (a, b) without a <= b in the lattice."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"pair {pair} is not below the lattice order")


class NoWitness(RadlatError):
    """No connecting series exists for the queried pair."""


class NotAnROrder(RadlatError):
    """Operation requires a transitive join-stable relation."""


class InternalCheckError(RadlatError):
    """Two derivations of the same fact disagree: an implementation bug."""


class InternalEquivalenceMismatch(InternalCheckError):
    """The two equivalent defining forms of a relation class disagree."""


class ParseError(RadlatError):
    """Input text does not match the grammar."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)


class NoUniqueRadical(RadlatError):
    """The derived relation has zero or several radical candidates."""

    def __init__(self, candidates):
        self.candidates = sorted(candidates)
        super().__init__(f"radical candidates: {self.candidates}")


class NotEquivariant(RadlatError):
    """A block map distinguishes isomorphic algebras."""


class AxiomsNotSatisfied(RadlatError):
    """Correspondence check requires a map that passes the radical axioms."""
