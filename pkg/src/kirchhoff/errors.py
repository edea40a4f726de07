"""Exception hierarchy shared by the solver modules and the CLI."""


class KirchhoffError(Exception):
    """Base class; ``code`` is a stable machine-readable tag."""

    code = "ERROR"


class ModelRejected(KirchhoffError):
    code = "MODEL_REJECTED"

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.diagnostics) or "model rejected")


class IntegrationBlowup(KirchhoffError):
    code = "INTEGRATION_BLOWUP"

    def __init__(self, r_last):
        self.r_last = r_last
        super().__init__(f"non-finite state after r = {r_last:.6g}")


class NoBracket(KirchhoffError):
    code = "NO_BRACKET"


class ShootingFailed(KirchhoffError):
    code = "SHOOTING_FAILED"


class DimensionError(KirchhoffError):
    code = "DIMENSION_ERROR"


class NotARoot(KirchhoffError):
    code = "NOT_A_ROOT"


class GridError(KirchhoffError):
    code = "GRID_ERROR"


class HypothesisError(KirchhoffError):
    code = "HYPOTHESIS_ERROR"
