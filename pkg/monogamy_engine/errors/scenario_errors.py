"""
Module to implement exceptions that occur when building scenarios and expressions.
"""


class InvalidScenarioError(Exception):
    """
    A class to implement the error that occurs whenever a scenario is malformed (duplicate ids, bad cardinalities, self-loops...).
    """


class InvalidExpressionError(Exception):
    """
    A class to implement the error that occurs whenever an expression does not fit its scenario.
    """


class InvalidDecompositionError(Exception):
    """
    A class to implement the error that occurs whenever a decomposition cannot be matched with its expression.
    """
