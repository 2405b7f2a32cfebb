"""Shared exception types.

ValidationError covers bad inputs (files, arguments, graph construction);
ComputationError covers failures of a well-posed computation, e.g. an
iteration that does not converge. The CLI maps them to exit codes 2 and 3.
"""


class AuditError(Exception):
    pass


class ValidationError(AuditError):
    pass


class ComputationError(AuditError):
    pass


class ConvergenceError(ComputationError):
    """Iterative method hit its iteration cap.

    Carries the number of iterations performed in ``iterations``.
    """

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations
