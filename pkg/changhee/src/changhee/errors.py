from typing import FrozenSet, Optional, Tuple


class ChangheeError(Exception):
    """Base class for every error raised by the changhee package"""


class TruncationMismatchError(ChangheeError):
    """Two series with different truncation orders were combined"""

    def __init__(self, left: int, right: int):
        super().__init__(f"truncation orders differ: {left} vs {right}")
        self.left = left
        self.right = right


class NonInvertibleError(ChangheeError, ZeroDivisionError):
    """A constant term (or ring element) has no inverse in its coefficient ring"""


class CompositionError(ChangheeError):
    """Inner series of a composition has a nonzero constant term"""


class ExpansionOrderError(ChangheeError, IndexError):
    """A coefficient beyond the truncation order was requested"""

    def __init__(self, index: int, order: int):
        super().__init__(f"coefficient {index} requested from a series truncated at order {order}")
        self.index = index
        self.order = order


class MalformedCompositionError(ChangheeError, ValueError):
    """Multinomial parts do not sum to the total"""


class UnknownIdentityError(ChangheeError, KeyError):
    def __init__(self, identity_id: str):
        super().__init__(identity_id)
        self.identity_id = identity_id

    def __str__(self) -> str:
        return f"unknown identity id: {self.identity_id!r}"


class ConfigError(ChangheeError, ValueError):
    """Invalid harness configuration"""


class GfSyntaxError(ChangheeError):
    """Parse failure in a generating-function expression"""

    def __init__(self, message: str, offset: int, expected: FrozenSet[str] = frozenset()):
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)
        super().__init__(self.render())

    def render(self) -> str:
        text = f"syntax error at offset {self.offset}: {self.message}"
        if self.expected:
            text += f" (expected one of: {', '.join(sorted(self.expected))})"
        return text


class GfEvalError(ChangheeError):
    """Evaluation failure, carrying the source span of the offending subexpression"""

    def __init__(self, message: str, span: Tuple[int, int], source: Optional[str] = None):
        self.message = message
        self.span = span
        self.source = source
        super().__init__(self.render())

    def render(self) -> str:
        start, end = self.span
        text = f"evaluation error at offset {start}..{end}: {self.message}"
        if self.source is not None:
            text += f" in {self.source[start:end]!r}"
        return text
