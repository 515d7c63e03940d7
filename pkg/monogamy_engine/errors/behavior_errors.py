"""
Module to implement exceptions that occur when handling behaviors (boxes).
"""


class MalformedBehaviorError(Exception):
    """
    A class to implement the error that occurs whenever a probability table is malformed.
    """


class DisturbanceError(Exception):
    """
    A class to implement the error that occurs whenever a behavior violates the no-disturbance constraints.
    """


class UnsupportedTermError(Exception):
    """
    A class to implement the error that occurs whenever a term support is contained in no context.
    """
