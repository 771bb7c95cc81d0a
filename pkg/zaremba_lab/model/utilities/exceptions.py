#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module providing additional exception classes.

Classes:
    - ZarembaLabException
    - PreconditionException
        - NotCoprimeException
        - OutOfRangeException
        - ModulusMismatchException
        - NotADivisorException
        - NonUnitException
        - EmptySetException
        - DeterminantException
        - InvalidExpansionException
        - InconsistentParametersException
        - NotADirectSumException
        - SamplerBudgetException
    - CapExceededException
        - GroupCapExceededException
        - NodeCapExceededException
        - ProductCapExceededException
    - CacheCorruptionException
    - ConfigHashMismatchException
    - DegenerateFitException
"""
from typing import Any


class ZarembaLabException(Exception):
    """Base class of all exceptions raised by the laboratory."""


class PreconditionException(ZarembaLabException):
    """Custom exception that is thrown when the input of an operation violates its preconditions."""


class NotCoprimeException(PreconditionException):
    """Custom exception that is thrown when a numerator shares a factor with its modulus."""

    def __init__(self, a: int, q: int):
        """
        @param a: The numerator.
        @type a: int
        @param q: The modulus.
        @type q: int
        """
        super().__init__(f"'{a}' and '{q}' are not coprime.")
        self.a = a
        self.q = q


class OutOfRangeException(PreconditionException):
    """Custom exception that is thrown when a value is outside of its admissible range."""

    def __init__(self, name: str, value: Any, expected: str):
        """
        @param name: Name of the offending parameter.
        @type name: str
        @param value: The given value.
        @param expected: Human readable description of the admissible range.
        @type expected: str
        """
        super().__init__(f"Parameter '{name}' = {value} is out of range, expected {expected}.")
        self.name = name
        self.value = value


class ModulusMismatchException(PreconditionException):
    """Custom exception that is thrown when objects of different moduli are combined."""

    def __init__(self, first: int, second: int):
        """
        @param first: Modulus of the left operand.
        @type first: int
        @param second: Modulus of the right operand.
        @type second: int
        """
        super().__init__(f"Cannot combine objects of modulus {first} and {second}.")


class NotADivisorException(PreconditionException):
    """Custom exception that is thrown when a level does not divide the modulus."""

    def __init__(self, level: int, q: int):
        """
        @param level: The requested level.
        @type level: int
        @param q: The modulus.
        @type q: int
        """
        super().__init__(f"{level} does not divide {q}.")


class NonUnitException(PreconditionException):
    """Custom exception that is thrown when a residue has no inverse."""

    def __init__(self, value: int, q: int):
        super().__init__(f"{value} is not a unit modulo {q}.")
        self.value = value


class EmptySetException(PreconditionException):
    """Custom exception that is thrown when an operation requires a nonempty set or measure."""

    def __init__(self, what: str):
        super().__init__(f"The {what} must not be empty.")


class DeterminantException(PreconditionException):
    """Custom exception that is thrown when a matrix has the wrong determinant."""

    def __init__(self, determinant: int, q: int, expected: str = "1"):
        super().__init__(f"Determinant {determinant} mod {q} is invalid, expected {expected}.")


class InvalidExpansionException(PreconditionException):
    """Custom exception that is thrown for malformed partial quotient sequences."""

    def __init__(self, quotients: Any, reason: str):
        super().__init__(f"Invalid continued fraction {list(quotients)}: {reason}.")


class InconsistentParametersException(PreconditionException):
    """
    Custom exception that is thrown when the counting parameters violate t²N ≈ q. The message lists the
    constraint so that the user can fix the call.
    """

    def __init__(self, q: int, t: int, n: int):
        """
        @param q: The modulus.
        @type q: int
        @param t: The continuant threshold.
        @type t: int
        @param n: The interval length.
        @type n: int
        """
        super().__init__(f"Inconsistent parameters: t²N = {t * t * n} but q = {q}. The constraint "
                         f"t²N = q must hold within a factor 2 (q/2 ≤ t²N ≤ 2q).")
        self.q = q
        self.t = t
        self.n = n


class NotADirectSumException(PreconditionException):
    """Custom exception that is thrown when Λ + [1, N] has a repeated sum modulo q."""

    def __init__(self, q: int, n: int):
        super().__init__(f"The base points do not form a direct sum with [1, {n}] modulo {q}.")


class SamplerBudgetException(PreconditionException):
    """Custom exception that is thrown when a random sampler is configured without budget."""

    def __init__(self, budget: int):
        super().__init__(f"Sampler budget must be positive, got {budget}.")


class CapExceededException(ZarembaLabException):
    """Custom exception that is thrown when a computation would exceed a configured resource cap."""

    def __init__(self, what: str, estimate: int, cap: int):
        """
        @param what: Description of the capped resource.
        @type what: str
        @param estimate: The predicted size of the computation.
        @type estimate: int
        @param cap: The configured cap.
        @type cap: int
        """
        super().__init__(f"{what}: estimated size {estimate} exceeds the configured cap {cap}.")
        self.estimate = estimate
        self.cap = cap


class GroupCapExceededException(CapExceededException):
    """Custom exception that is thrown when SL2(Z/qZ) is too large to be enumerated."""

    def __init__(self, q: int, cap: int):
        super().__init__(f"Enumeration of SL2(Z/{q}Z) (q³ estimate)", q ** 3, cap)
        self.q = q


class NodeCapExceededException(CapExceededException):
    """Custom exception that is thrown when a continuant tree would grow beyond the node cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__("Continuant tree", estimate, cap)


class ProductCapExceededException(CapExceededException):
    """Custom exception that is thrown when a set product would exceed the product cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__("Set product", estimate, cap)


class CacheCorruptionException(ZarembaLabException):
    """Custom exception that is thrown when a range cache line fails its checksum or cannot be parsed."""

    def __init__(self, path: Any, line_number: int, line: str):
        """
        @param path: Path of the cache file.
        @param line_number: One based line number of the corrupt line.
        @type line_number: int
        @param line: The offending line.
        @type line: str
        """
        super().__init__(f"Cache '{path}' is corrupt at line {line_number}: '{line.rstrip()}'.")
        self.line_number = line_number


class ConfigHashMismatchException(ZarembaLabException):
    """Custom exception that is thrown when resuming from a file written under a different config."""

    def __init__(self, path: Any, expected: str, found: str):
        super().__init__(f"'{path}' was written with config hash {found}, current config hash is {expected}. "
                         f"Refusing to resume.")


class DegenerateFitException(ZarembaLabException):
    """Custom exception that is thrown when a least squares fit has no variance to work with."""

    def __init__(self, what: str):
        super().__init__(f"Degenerate fit: {what}.")
