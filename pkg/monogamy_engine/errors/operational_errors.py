"""
Module to implement exceptions that occur while running the numerical procedures.
"""


class BudgetExceededError(Exception):
    """
    A class to implement the error that occurs whenever a computation needs more work than its budget allows.
    """


    def __init__(self, message : str, required : int, budget : int) -> None:
        super().__init__(f'{message} (required: {required}, budget: {budget})')
        self.required = required
        self.budget = budget


class InfeasibleProgramError(Exception):
    """
    A class to implement the error that occurs whenever a linear program has no feasible point.
    """


class UnboundedProgramError(Exception):
    """
    A class to implement the error that occurs whenever a linear program is unbounded.
    """


class GateFailureError(Exception):
    """
    A class to implement the error that occurs whenever a fixture does not reproduce its recorded values.
    """


    def __init__(self, message : str, candidates : dict | None = None) -> None:
        super().__init__(message if not candidates else f'{message} (candidates: {candidates})')
        self.candidates = dict(candidates or {})
