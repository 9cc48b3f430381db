"""Gradings of the root system induced by an integral coweight tau: the grade
of a root, the finiteness test for the grade-0 part, and graded slices of
inversion sets."""

from __future__ import annotations

from .errors import NotDominant
from .gcm import FINITE, GCM, classify_principal
from .lattice import Coweight, RootVec, WeylWord
from .weyl import inversion_set

__all__ = ["Coweight", "grade_of", "check_finite_grading", "phi_w_d"]


def grade_of(beta: RootVec, tau: Coweight) -> int:
    """beta(tau) = sum_i beta_i tau_i."""
    if len(beta.coeffs) != len(tau.values):
        raise ValueError("root and coweight live in different ranks")
    return sum(b * t for b, t in zip(beta.coeffs, tau.values))


def check_finite_grading(g: GCM, tau: Coweight) -> bool:
    """True when the grade-0 subalgebra is finite dimensional, i.e. the
    principal submatrix on the zero support of tau is of finite type."""
    if len(tau.values) != g.n:
        raise ValueError(f"coweight has {len(tau.values)} entries, GCM rank is {g.n}")
    if not tau.is_dominant:
        raise NotDominant(
            "finite-grading test requires a dominant coweight",
            coweight=list(tau.values),
        )
    zero = tau.zero_support()
    if not zero:
        return True
    return classify_principal(g, zero).kind == FINITE


def phi_w_d(g: GCM, word: WeylWord, tau: Coweight, d: int) -> list[RootVec]:
    """The grade-d slice of the inversion set Phi_w, listed by (height, lex)."""
    if d < 1:
        raise ValueError(f"grade must be >= 1, got {d}")
    if len(tau.values) != g.n:
        raise ValueError(f"coweight has {len(tau.values)} entries, GCM rank is {g.n}")
    slice_ = [b for b in inversion_set(g, word) if grade_of(b, tau) == d]
    slice_.sort()
    return slice_
