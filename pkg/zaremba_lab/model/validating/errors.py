#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Failures found while validating an experiment config. Every error names the offending config key; keys inside the
caps block are written as "caps.<key>".
"""

from typing import Any, Iterable, Optional, Text


class ValidationError(Exception):
    """
    A config entry that cannot be used for a run.
    """

    def __init__(self, key: Optional[Text], message: Text):
        self.key = key
        super().__init__(f"'{key}': {message}" if key else message)


class KeyNotIntendedError(ValidationError):
    """
    Attributes:
        intended_keys:
            The keys the config or block may contain.
        actual_key:
            The unknown key.
        block:
            Name of the enclosing block, None at top level.
    """

    def __init__(self, intended_keys: Iterable[Text], actual_key: Text, block: Optional[Text] = None):
        self.intended_keys = sorted(intended_keys)
        self.actual_key = actual_key
        self.block = block
        key = f"{block}.{actual_key}" if block else actual_key
        super().__init__(key, f"unknown key, allowed are {', '.join(self.intended_keys)}.")


class WrongTypeError(ValidationError):

    def __init__(self, expected_type: Any, actual_type: type, key: Optional[Text] = None):
        self.expected_type = expected_type
        self.actual_type = actual_type
        super().__init__(key, f"expected {expected_type}, got {actual_type.__name__}.")


class WrongValueError(ValidationError):
    """
    A value outside its interval, e.g. an exponent not in (0, 1), or not among the allowed choices.
    """

    def __init__(self, expected_value: Any, actual_value: Any, key: Text):
        self.expected_value = expected_value
        self.actual_value = actual_value
        super().__init__(key, f"{actual_value!r} is not in {expected_value}.")


class WrongRelationError(ValidationError):
    """
    Values that are valid on their own but contradict each other, e.g. M_star < M.
    """

    def __init__(self, relation: Text, **values: Any):
        self.relation = relation
        self.values = values
        super().__init__(None, f"{relation} violated by {values}.")
