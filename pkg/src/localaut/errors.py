"""Error taxonomy.

Operational failures raise; mathematical verdicts (NotInLattice, NoSolution,
NotInterpolable, Refuted, ...) are returned as values, never raised.
"""
from __future__ import annotations


class LocalautError(Exception):
    """Base class; carries a machine-readable code for CLI error reports."""

    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class BadParameters(LocalautError):
    code = "bad-parameters"


class RegimeMismatch(LocalautError):
    code = "regime-mismatch"


class ZeroInput(LocalautError):
    code = "zero-input"


class DomainNotFactorable(LocalautError):
    code = "domain-not-factorable"


class TooFewGenerators(LocalautError):
    code = "too-few-generators"


class AmbientMismatch(LocalautError):
    code = "ambient-mismatch"


class OddN(LocalautError):
    code = "odd-n"


class SingularMatrix(LocalautError):
    code = "singular-matrix"


class BadIdempotent(LocalautError):
    code = "bad-idempotent"


class NotInGroup(LocalautError):
    code = "not-in-group"


class GroupMismatch(LocalautError):
    code = "group-mismatch"


class IllegalSigma(LocalautError):
    code = "illegal-sigma"


class IllegalScalarClass(LocalautError):
    code = "illegal-scalar-class"


class NonUnitaryT(LocalautError):
    code = "non-unitary-t"


class SingularT(LocalautError):
    code = "singular-t"


class DetOutsideLattice(LocalautError):
    code = "det-outside-lattice"


class LatticeIncompatible(LocalautError):
    code = "lattice-incompatible"


class TooFewSamples(LocalautError):
    code = "too-few-samples"


class BudgetExceeded(LocalautError):
    """Oracle query budget exhausted; carries the partial report if any."""

    code = "budget-exceeded"

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}

    def payload(self) -> dict:
        out = super().payload()
        out["partial"] = self.partial
        return out


class OracleIncomplete(LocalautError):
    """A sample-file oracle was asked for a probe it does not contain."""

    code = "oracle-incomplete"

    def __init__(self, message: str, probe: dict | None = None):
        super().__init__(message)
        self.probe = probe

    def payload(self) -> dict:
        out = super().payload()
        if self.probe is not None:
            out["missing_probe"] = self.probe
        return out


class GramSingular(LocalautError):
    code = "gram-singular"


class ResidualFail(LocalautError):
    code = "residual-fail"


class NonUnitaryFit(LocalautError):
    code = "non-unitary-fit"


class SLRecoveryFailed(LocalautError):
    code = "sl-recovery-failed"


class FTableInconsistent(LocalautError):
    code = "f-table-inconsistent"


class IrrationalRootUnsupported(LocalautError):
    code = "irrational-root-unsupported"


class SigmaUndetermined(LocalautError):
    code = "sigma-undetermined"


class FileFormatError(LocalautError):
    code = "file-format"
