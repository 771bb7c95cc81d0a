#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Validators for experiment configs and the reports they leave behind. Each validator checks one stage of a config
(file, YAML, keys, types, values, relations) and records its outcome as a Finding labelled with that stage.

Classes:
    - Validator
    - CompositeValidator
    - ProcessingValidator
    - Finding
    - Report
    - CompositeReport
"""

from __future__ import annotations

import abc
from typing import Any, List, NamedTuple, Text, Union

Outcome = Union[Exception, Text]


class Finding(NamedTuple):
    """
    One validation outcome: an exception for a failure, a message otherwise.
    """
    stage: Text
    outcome: Outcome

    @property
    def ok(self) -> bool:
        return not isinstance(self.outcome, Exception)

    def __str__(self) -> Text:
        return f"{'+' if self.ok else '-'} [{self.stage}] {self.outcome}"


class Report:
    """
    Findings of a single validator.
    """

    def __init__(self, *outcomes: Outcome, stage: Text = "config"):
        self.findings = [Finding(stage, outcome) for outcome in outcomes]

    def failures(self) -> List[Finding]:
        return [finding for finding in self.findings if not finding.ok]

    def errors(self) -> List[Exception]:
        return [finding.outcome for finding in self.failures()]

    def lines(self) -> List[Text]:
        return [str(finding) for finding in self.findings]

    def __bool__(self) -> bool:
        return all(finding.ok for finding in self.findings)

    def __str__(self) -> Text:
        return "\n".join(self.lines())

    def __repr__(self) -> str:
        return f"Report({self.findings!r})"


class CompositeReport(Report):
    """
    Report made of the reports of child validators, in validation order.
    """

    def __init__(self, *reports: Report):
        super().__init__()
        self.reports = list(reports)

    def append_report(self, report: Union[Report, Validator]) -> None:
        self.reports.append(report.report if isinstance(report, Validator) else report)

    def failures(self) -> List[Finding]:
        return [finding for report in self.reports for finding in report.failures()]

    def lines(self) -> List[Text]:
        return [line for report in self.reports for line in report.lines()]

    def __bool__(self) -> bool:
        return all(self.reports)

    def __len__(self) -> int:
        return len(self.reports)


class Validator(abc.ABC):
    """
    Validates one stage of a config.

    Attributes:
        value:
            The value to get validated, or the result of a preceding validator.
        report:
            The report created during validation.
        stage:
            Label of the checked stage, used in the report.
    """

    stage: Text = "config"

    def __init__(self, value: Union[Any, Validator]):
        """
        @param value: The value to get validated or a validator having the result value.
        """
        self.value = value.get_result_value() if isinstance(value, Validator) else value
        self.report = None

    def get_result_value(self) -> Any:
        return self.value

    def passed(self, message: Text) -> bool:
        self.report = Report(message, stage=self.stage)
        return True

    def failed(self, error: Exception) -> bool:
        self.report = Report(error, stage=self.stage)
        return False

    @abc.abstractmethod
    def validate(self) -> bool:
        """
        @return: Whether further validators may continue validating.
        """
        raise NotImplementedError

    def __bool__(self) -> bool:
        return bool(self.report)


class CompositeValidator(Validator):
    """
    Runs child validators in order and stops at the first failing one.
    """

    def __init__(self, value: Union[Any, Validator], *child_validators: Validator):
        super().__init__(value)
        self.validators = list(child_validators)
        self.report = CompositeReport()

    def append_report(self, report: Union[Validator, Report]) -> None:
        assert isinstance(self.report, CompositeReport)
        self.report.append_report(report)

    def get_result_value(self) -> Any:
        """
        @return: The result of the last child if that one processes values, the own value otherwise.
        """
        if self.validators and isinstance(self.validators[-1], (ProcessingValidator, CompositeValidator)):
            return self.validators[-1].get_result_value()
        return self.value

    def validate(self) -> bool:
        for validator in self.validators:
            is_valid = validator.validate()
            self.append_report(validator)
            if not is_valid:
                return False
        return True


class ProcessingValidator(Validator):
    """
    Validator producing a result from its value, e.g. the file content from a path.
    """

    def __init__(self, value: Any):
        super().__init__(value)
        self.result = None

    @abc.abstractmethod
    def process(self) -> Any:
        raise NotImplementedError

    def get_result_value(self) -> Any:
        return self.result

    def validate(self) -> bool:
        self.result = self.process()
        return True
