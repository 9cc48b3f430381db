"""Generalized Cartan matrices: validation, symmetrizer, type classification,
and the invariant bilinear form (alpha_i|alpha_j) = d_i A_ij.

All arithmetic is exact (int / Fraction). The symmetrizer is normalized to
minimal positive integers on each connected component of the diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ._linalg import leading_principal_minors
from .errors import NotGCM, NotSymmetrizable
from .lattice import RootVec


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix with its minimal integer symmetrizer.

    Construct via validate_gcm(); direct construction skips the checks.
    """

    entries: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        """Entry A_ij, 1-based."""
        return self.entries[i - 1][j - 1]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"GCM({self.rows()})"


@dataclass(frozen=True)
class TypeTag:
    kind: str  # "finite" | "affine" | "indefinite"
    hyperbolic: bool = False

    def __str__(self):
        return self.kind + ("+hyperbolic" if self.hyperbolic else "")


FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"


def validate_gcm(matrix: Sequence[Sequence[int]]) -> GCM:
    """Check the GCM axioms and compute the minimal positive integer symmetrizer.

    Raises NotGCM on an axiom violation (with the offending entry), and
    NotSymmetrizable when the cycle conditions d_i A_ij = d_j A_ji cannot be met.
    """
    n = len(matrix)
    rows = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise NotGCM(f"row {i + 1} has length {len(row)}, expected {n}", row=i + 1)
        rows.append(tuple(int(x) for x in row))
    entries = tuple(rows)
    for i in range(n):
        if entries[i][i] != 2:
            raise NotGCM(f"diagonal entry A_{i + 1}{i + 1} = {entries[i][i]} != 2", i=i + 1, j=i + 1)
        for j in range(n):
            if i == j:
                continue
            if entries[i][j] > 0:
                raise NotGCM(
                    f"off-diagonal entry A_{i + 1}{j + 1} = {entries[i][j]} > 0", i=i + 1, j=j + 1
                )
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise NotGCM(
                    f"zero-symmetry violated at ({i + 1},{j + 1})", i=i + 1, j=j + 1
                )
    d = _symmetrizer(entries)
    return GCM(entries=entries, symmetrizer=d)


def _symmetrizer(entries: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    # Propagate d along diagram edges (d_j = d_i * A_ij / A_ji), check cycles,
    # then scale each connected component to minimal positive integers.
    n = len(entries)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j == i or entries[i][j] == 0:
                    continue
                val = d[i] * Fraction(entries[i][j], entries[j][i])
                if d[j] is None:
                    d[j] = val
                    comp.append(j)
                    queue.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable(
                        f"cycle condition d_i A_ij = d_j A_ji fails at edge ({i + 1},{j + 1})",
                        i=i + 1,
                        j=j + 1,
                    )
        denom = lcm(*[d[k].denominator for k in comp])
        scaled = [d[k] * denom for k in comp]
        g = gcd(*[int(x) for x in scaled])
        for k, x in zip(comp, scaled):
            d[k] = Fraction(int(x) // g)
    return tuple(int(x) for x in d)


def components(g: GCM) -> list[list[int]]:
    """Connected components of the diagram, as sorted lists of 0-based indices."""
    n = g.n
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = [s]
        while queue:
            i = queue.pop()
            for j in range(n):
                if not seen[j] and g.entries[i][j] != 0:
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _classify_block(entries: tuple[tuple[int, ...], ...], idx: list[int]) -> str:
    # Leading principal minors of the integer block have the same signs as the
    # symmetrized block's (D positive diagonal), so Sylvester applies:
    # all > 0  <=> positive definite  <=> finite;
    # first k-1 > 0 and det = 0  <=> PSD of corank 1 (Cauchy interlacing) <=> affine.
    block = [[entries[i][j] for j in idx] for i in idx]
    minors = leading_principal_minors(block)
    if all(m > 0 for m in minors):
        return FINITE
    if all(m > 0 for m in minors[:-1]) and minors[-1] == 0:
        return AFFINE
    return INDEFINITE


def classify(g: GCM) -> TypeTag:
    """Finite/affine/indefinite trichotomy (exact), with the rank-2 hyperbolic flag.

    Decomposable matrices: finite iff every block is finite; affine iff all
    blocks are finite-or-affine with at least one affine; else indefinite.
    """
    if g.n == 0:
        return TypeTag(FINITE)
    kinds = [_classify_block(g.entries, comp) for comp in components(g)]
    if all(k == FINITE for k in kinds):
        kind = FINITE
    elif all(k in (FINITE, AFFINE) for k in kinds):
        kind = AFFINE
    else:
        kind = INDEFINITE
    hyperbolic = False
    if g.n == 2 and kind == INDEFINITE:
        # rank-2: indefinite <=> A_12*A_21 >= 5, the hyperbolic range
        hyperbolic = g.entries[0][1] * g.entries[1][0] >= 5
    return TypeTag(kind, hyperbolic)


def classify_principal(g: GCM, idx_1based: Sequence[int]) -> TypeTag:
    """classify() of the principal submatrix on the given 1-based index set."""
    idx = sorted(i - 1 for i in idx_1based)
    if not idx:
        return TypeTag(FINITE)
    sub = [[g.entries[i][j] for j in idx] for i in idx]
    return classify(validate_gcm(sub))


def symmetrized(g: GCM) -> list[list[int]]:
    """The symmetric matrix S = diag(d) * A, S_ij = (alpha_i|alpha_j)."""
    return [[g.symmetrizer[i] * g.entries[i][j] for j in range(g.n)] for i in range(g.n)]


def bilinear_form(g: GCM, beta: RootVec, gamma: RootVec) -> Fraction:
    """(beta|gamma) = sum_ij beta_i gamma_j d_i A_ij, exact."""
    if beta.n != g.n or gamma.n != g.n:
        raise ValueError(f"rank mismatch: form on rank {g.n}, got {beta.n} and {gamma.n}")
    total = 0
    for i, bi in enumerate(beta.coeffs):
        if bi == 0:
            continue
        di = g.symmetrizer[i]
        row = g.entries[i]
        total += bi * di * sum(cj * row[j] for j, cj in enumerate(gamma.coeffs) if cj != 0)
    return Fraction(total)


def norm(g: GCM, beta: RootVec) -> Fraction:
    """(beta|beta)."""
    return bilinear_form(g, beta, beta)
