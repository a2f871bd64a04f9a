"""Exception hierarchy shared by every stringcat module."""
from __future__ import annotations


class StringcatError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""
    exit_code = 65


# signatures
class UndeclaredObject(StringcatError):
    pass


class DualInMonoidalSignature(StringcatError):
    pass


class NonAtomicSimpleType(StringcatError):
    pass


# terms
class TypeMismatch(StringcatError):
    def __init__(self, path, expected, got):
        self.path, self.expected, self.got = path, expected, got
        where = '/'.join(path) or '<root>'
        super().__init__(f'type mismatch at {where}: expected {expected}, got {got}')


class UnknownGenerator(StringcatError):
    pass


class ConstantNotInDoctrine(StringcatError):
    def __init__(self, constant, doctrine):
        self.constant, self.doctrine = constant, doctrine
        super().__init__(f'{constant} is not available in doctrine {doctrine}')


class TermSyntaxError(StringcatError):
    def __init__(self, span, message):
        self.span, self.message = span, message
        super().__init__(f'{span}: {message}')


# diagrams
class BoundaryMismatch(StringcatError):
    pass


class MissingRotationSystem(StringcatError):
    exit_code = 70


class RegimeError(StringcatError):
    pass


class WindingInconsistency(StringcatError):
    pass


# deciding
class NoDeciderForDoctrine(StringcatError):
    pass


class NonTermination(StringcatError):
    exit_code = 70


# models
class UnsupportedConstant(StringcatError):
    pass


class CarrierMismatch(StringcatError):
    pass


class SoundnessViolation(StringcatError):
    exit_code = 70
