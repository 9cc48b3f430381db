"""Error taxonomy. Every domain failure raises a subclass of KmjmError with a
machine-readable code (used by the CLI for structured stderr output)."""

from __future__ import annotations


class KmjmError(Exception):
    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def as_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "context": _plain(self.context)}


def _plain(obj):
    # JSON-friendly rendering of exception context (tuples, Fractions, dataclasses).
    from fractions import Fraction

    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "coeffs"):
        return list(obj.coeffs)
    if hasattr(obj, "values") and not isinstance(obj, (str, bytes)) and not callable(obj.values):
        return list(obj.values)
    if hasattr(obj, "letters"):
        return list(obj.letters)
    return obj


class NotGCM(KmjmError):
    code = "not_gcm"


class NotSymmetrizable(KmjmError):
    code = "not_symmetrizable"


class DegenerateDenominator(KmjmError):
    code = "degenerate_denominator"


class HeightOutOfRange(KmjmError):
    code = "height_out_of_range"


class NotRealRoot(KmjmError):
    code = "not_real_root"


class NotReduced(KmjmError):
    code = "not_reduced"


class NotDominant(KmjmError):
    code = "not_dominant"


class NotPiSystem(KmjmError):
    code = "not_pi_system"


class OracleTooShort(KmjmError):
    code = "oracle_too_short"


class SingularB(KmjmError):
    code = "singular_b"


class ZeroElement(KmjmError):
    code = "zero_element"


class ResourceCap(KmjmError):
    code = "resource_cap"


class InternalInconsistency(KmjmError):
    code = "internal_inconsistency"


class TruncationAmbiguous(KmjmError):
    code = "truncation_ambiguous"


class NotHyperbolic(KmjmError):
    code = "not_hyperbolic"
