"""
Exception hierarchy shared by every module.

The CLI maps the groups below onto exit codes: InputError -> 2,
CapabilityMissing -> 3, SearchExhausted -> 4, SupportViolation -> 1.
"""


class UnitriError(Exception):
    """Base class for all errors raised by the package."""


# ===========================
# INPUT ERRORS (exit code 2)
# ===========================

class InputError(UnitriError):
    """The caller handed over something the operation cannot accept."""


class ParseError(InputError):
    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        if row is not None and column is not None:
            message = f"{message} (row {row}, column {column})"
        super().__init__(message)


class DescriptorMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class DimensionTooSmall(InputError):
    pass


class NotAUnit(InputError):
    pass


class NotUnimodular(InputError):
    pass


class NotSL(InputError):
    pass


class NotMonomial(InputError):
    pass


class DetNotOne(InputError):
    pass


class CornerTransvection(InputError):
    pass


class OutOfRange(InputError):
    pass


class NoSolution(InputError):
    pass


class NearSingular(InputError):
    pass


class BadPattern(InputError):
    pass


class TooLarge(InputError):
    pass


# ===========================
# CAPABILITY / SEARCH / INTERNAL
# ===========================

class CapabilityMissing(UnitriError):
    """The ring lacks a capability the algorithm needs (e.g. stable rank 1)."""


class SearchExhausted(UnitriError):
    """The primitive-root prime search hit its bound.

    Termination of the search is only guaranteed under the Generalised
    Riemann Hypothesis, so hitting ``k_max`` is reported, never looped past.
    """

    def __init__(self, k_max, c=None, d=None, p=None):
        self.k_max = k_max
        self.c = c
        self.d = d
        self.p = p
        super().__init__(
            f"no prime q = {c} + {d}*k with {p} a primitive root mod q for "
            f"1 <= |k| <= {k_max}; termination of this search is conditional on "
            f"the Generalised Riemann Hypothesis"
        )


class SupportViolation(UnitriError):
    """An internal support or identity check failed: a bug, not bad input."""
