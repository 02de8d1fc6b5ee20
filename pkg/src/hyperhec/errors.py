"""Exception hierarchy shared by all modules.

Every validation failure derives from :class:`HypergraphError`; the CLI maps
those to exit code 1 and :class:`NotConverged` to exit code 2.
"""


class HypergraphError(ValueError):
    """Base class for input/validation errors."""


class RepeatedNode(HypergraphError):
    pass


class EmptyBlock(HypergraphError):
    pass


class NonPositiveWeight(HypergraphError):
    pass


class UnknownNode(HypergraphError):
    pass


class NonUniform(HypergraphError):
    def __init__(self, size_a, size_b):
        super().__init__(f"hypergraph is not uniform: found edge sizes {size_a} and {size_b}")
        self.sizes = (size_a, size_b)


class NotDirected(HypergraphError):
    pass


class NonTailUniform(HypergraphError):
    def __init__(self, size_a, size_b):
        super().__init__(f"hypergraph is not tail-uniform: found tail sizes {size_a} and {size_b}")
        self.sizes = (size_a, size_b)


NotTailUniform = NonTailUniform


class MixedKinds(HypergraphError):
    pass


class WrongArity(HypergraphError):
    pass


class IndexOutOfRange(HypergraphError):
    pass


class LengthMismatch(HypergraphError):
    pass


SizeMismatch = LengthMismatch


class NonFiniteInput(HypergraphError):
    pass


class TooLarge(HypergraphError):
    pass


class NotStronglyConnected(HypergraphError):
    pass


class NotFHypergraph(HypergraphError):
    pass


class DegenerateInput(HypergraphError):
    pass


class KOutOfRange(HypergraphError):
    pass


class ParseError(HypergraphError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class EmptySide(ParseError):
    pass


class NotConverged(RuntimeError):
    """Power iteration hit ``max_iter``; the partial result is kept on ``.result``."""

    def __init__(self, iterations, residual, result=None):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(bracket width {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual
        self.result = result
