"""
Module to implement exceptions that occur when running chordal-graph routines.
"""


from typing import Sequence


class NonChordalGraphError(Exception):
    """
    A class to implement the error that occurs whenever a chordal graph is required and the given one is not.
    """


    def __init__(self, message : str, witness : Sequence[str] | None = None) -> None:
        super().__init__(message if witness is None else f'{message} (chordless cycle: {" - ".join(witness)})')
        self.witness = tuple(witness) if witness is not None else None


class UnknownVertexError(Exception):
    """
    A class to implement the error that occurs whenever a vertex is not part of the graph.
    """
