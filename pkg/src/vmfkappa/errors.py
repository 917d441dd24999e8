"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` and the process exit
status the command-line front end maps it to.
"""


class VmfKappaError(Exception):
    code = "error"
    exit_code = 1

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class DomainError(VmfKappaError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""

    code = "domain_error"
    exit_code = 2


class ParseError(VmfKappaError, ValueError):
    code = "parse_error"
    exit_code = 2


class NormError(VmfKappaError, ValueError):
    """A sample row is not a unit vector."""

    code = "norm_error"
    exit_code = 2

    def __init__(self, row, norm):
        self.row = row
        self.norm = norm
        super().__init__(f"row {row} has norm {norm!r}, expected 1")

    def to_dict(self):
        d = super().to_dict()
        d.update(row=self.row, norm=self.norm)
        return d


class DegenerateDataError(VmfKappaError, ValueError):
    """The data do not determine a finite, positive concentration."""

    code = "degenerate_data"
    exit_code = 3


class SaturatedDataError(DegenerateDataError):
    code = "saturated_data"


class ConvergenceError(VmfKappaError, RuntimeError):
    code = "non_convergence"
    exit_code = 4


class ClassificationError(VmfKappaError, RuntimeError):
    """A sign pattern did not match any admissible monotonicity profile."""

    code = "classification_error"
    exit_code = 5
