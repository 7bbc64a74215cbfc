class CdsError(Exception):
    """Base class for library errors."""


class InvalidNodeError(CdsError, IndexError):
    def __init__(self, node, n):
        super().__init__(f"node {node!r} out of range for graph with {n} nodes")
        self.node = node


class GraphFormatError(CdsError, ValueError):
    pass


class PreconditionError(CdsError, ValueError):
    """Input violates an operation's documented precondition."""


class CannotConnectError(PreconditionError):
    pass


class GenerationFailedError(CdsError, RuntimeError):
    def __init__(self, retries: int):
        super().__init__(f"no connected topology after {retries} retries")
        self.retries = retries


class TooLargeError(CdsError, ValueError):
    pass


class OracleViolationError(CdsError, AssertionError):
    """An approximation beat the exact optimum, which signals a bug."""


class ConfigError(CdsError, ValueError):
    pass
