"""Exception hierarchy.

Errors split into two families.  ``LawViolation`` subclasses mean a
mathematical identity failed numerically (a bug, a corrupted input or a
tolerance fault).  Everything else under ``RKHSError`` is a usage or
infrastructure problem.
"""


class RKHSError(Exception):
    pass


class LawViolation(RKHSError):
    """A checked identity did not hold within tolerance."""

    def __init__(self, law, message=""):
        self.law = law
        super().__init__(f"{law}: {message}" if message else law)


# perm-group
class InvalidPermutation(RKHSError):
    pass


class CapExceeded(RKHSError):
    pass


class ParentMismatch(RKHSError):
    pass


class NotASubgroup(RKHSError):
    pass


class UnknownFamily(RKHSError):
    pass


# function-space
class LengthMismatch(RKHSError):
    pass


class DegreeMismatch(RKHSError):
    pass


# invariant-decomposition
class NotHermitian(RKHSError):
    pass


class ConvergenceFailure(RKHSError):
    pass


class DecompositionUnstable(RKHSError):
    pass


class NotOrthogonal(RKHSError):
    pass


# rkhs-kernels
class TrivialSubspace(RKHSError):
    pass


class NonTransitive(LawViolation):
    def __init__(self, message=""):
        super().__init__("kernel-diagonal-constant", message)


class NotInSubspace(RKHSError):
    pass


class NotPairwiseOrthogonal(RKHSError):
    pass


class WrongCount(RKHSError):
    pass


# relation
class NotRelated(RKHSError):
    pass


class TransitivityViolation(LawViolation):
    def __init__(self, message=""):
        super().__init__("relation-is-equivalence", message)


class ClosureViolation(LawViolation):
    def __init__(self, message=""):
        super().__init__("relation-stabilizer-is-subgroup", message)


# conjecture-lab
class SearchCapExceeded(RKHSError):
    pass
