"""Exception types shared across the package.

The CLI maps these onto exit codes: RefusalError -> 1, SchemaError -> 2,
CapError -> 3. Plain ValueError marks a violated precondition (caller bug).
"""


class RefusalError(Exception):
    """Input is well-formed but mathematically out of scope.

    Examples: a single-prime degree handed to the witness machinery, or a
    matrix outside GL_r(Z) where an automorphism action is required.
    """


class SchemaError(Exception):
    """A JSON document does not match the expected shape."""


class CapError(Exception):
    """A configurable resource cap (modulus size, orbit size) was exceeded."""
