"""Exception hierarchy shared by every module."""


class RMError(Exception):
    """Base class for all library errors."""


class BoundTooSmall(RMError, ValueError):
    pass


class MalformedModel(RMError, ValueError):
    pass


class UnknownWorld(RMError, KeyError):
    def __str__(self):
        return f"unknown world: {self.args[0]!r}"


class UnknownProp(RMError, KeyError):
    def __str__(self):
        return f"unknown propositional variable: {self.args[0]!r}"


class GenerationFailed(RMError):
    pass


class NotDistinguishable(RMError):
    """The pair survives every stage of the stratification."""


class BudgetExceeded(RMError):
    pass


class NotBModel(RMError, ValueError):
    pass


class UnboundVariable(RMError, KeyError):
    def __str__(self):
        return f"unbound variable: {self.args[0]!r}"
