"""Exception hierarchy shared by the library and the CLI.

``exit_code`` is the process status the CLI maps each error to: 1 for domain
errors, 2 for malformed input.
"""


class MostsetError(Exception):
    exit_code = 1


class InvalidSpec(MostsetError):
    """A serialized set, family or collection does not describe a valid value."""

    exit_code = 2


class UniverseNotInfinite(MostsetError):
    pass


class EmptyCollection(MostsetError):
    pass


class CertificateRequired(MostsetError):
    pass


class InvalidHypergraph(MostsetError):
    pass


class AlphabetMismatch(MostsetError):
    exit_code = 2


class RegexSyntaxError(MostsetError):
    exit_code = 2

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ProductTooLarge(MostsetError):
    pass
