"""
Module to implement exceptions that occur while reading or writing JSON documents.
"""


class MalformedDocumentError(Exception):
    """
    A class to implement the error that occurs whenever a JSON document cannot be parsed or lacks required fields.
    """


    def __init__(self, message : str, path : str | None = None, line : int | None = None, column : int | None = None) -> None:
        location = ':'.join(str(part) for part in (path, line, column) if part is not None)
        super().__init__(f'{location}: {message}' if location else message)
        self.path = path
        self.line = line
        self.column = column
