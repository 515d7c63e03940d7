"""
Module to implement exceptions that occur when reading the engine configuration.
"""


class IllegalConfigurationError(Exception):
    """
    A class to implement the error that occurs whenever a computation fails due to an illegal/wrong configuration.
    """
