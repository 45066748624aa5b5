"""Exception hierarchy shared by all milnorforge modules."""


class MilnorForgeError(Exception):
    """Base class for all errors raised by this package."""


# --- arithmetic substrate ---

class NotPrime(MilnorForgeError):
    pass


class FieldTooLarge(MilnorForgeError):
    pass


class ZeroPolynomial(MilnorForgeError):
    pass


class NewtonConditionFails(MilnorForgeError):
    pass


class PrecisionExhausted(MilnorForgeError):
    pass


class NotAUnit(MilnorForgeError):
    pass


class ZeroElement(MilnorForgeError):
    pass


class PrecisionTooLowToReduce(MilnorForgeError):
    pass


# --- symbol algebra ---

class ZeroEntry(MilnorForgeError):
    pass


class ContextMismatch(MilnorForgeError):
    pass


class FactorizationMismatch(MilnorForgeError):
    pass


class BadPosition(MilnorForgeError):
    pass


class PatternMismatch(MilnorForgeError):
    pass


class DegreeTooLarge(MilnorForgeError):
    pass


# --- local K-theory ---

class NonUnitEntry(MilnorForgeError):
    pass


class BadModulus(MilnorForgeError):
    pass


class PiEntryPresent(MilnorForgeError):
    pass


class BadPrime(MilnorForgeError):
    pass


class ZeroInput(MilnorForgeError):
    pass


class PrecisionTooLow(MilnorForgeError):
    pass


# --- function fields / norms ---

class ReciprocityFails(MilnorForgeError):
    pass


class InfinityEntryNonzero(MilnorForgeError):
    pass


class NotMonic(MilnorForgeError):
    pass


class NotIrreducible(MilnorForgeError):
    pass


class EliminationFailed(MilnorForgeError):
    pass


# --- rational ring ---

class ResidueReducible(MilnorForgeError):
    pass


# --- cli ---

class MixedCharRejected(MilnorForgeError):
    pass


class UnknownSuite(MilnorForgeError):
    pass


class BadInput(MilnorForgeError):
    """Command-line input that cannot be parsed or is out of contract."""
