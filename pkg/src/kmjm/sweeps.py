"""Falsification sweeps behind ``kmjm verify``.

Each suite replays one mechanized claim over a bounded, deterministic grid
and reports every counterexample candidate it finds.  An empty failure list
is the pass verdict; suites never stop at the first hit, so a report always
describes the whole grid.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ._linalg import det_exact
from .errors import HeightOutOfRange, KmjmError, SingularB
from .gcm import FINITE, GCM, validate_gcm
from .grading import check_finite_grading, grade_of, phi_w_d
from .lattice import Coweight, RootVec, WeylWord, simple_root
from .pisystem import classify_pi_type, make_pi_system
from .rank2 import build_exceptional_triple, classify_intersection
from .realize import TruncatedAlgebra, build_truncated
from .roots import MultTable, peterson_multiplicities
from .sl2 import (
    build_triple,
    solve_mu,
    verify_realized,
    verify_symbolic,
    verify_triple_elements,
)
from .weyl import inversion_set, is_reduced

__all__ = [
    "SweepConfig",
    "SweepInstance",
    "SuiteReport",
    "SUITES",
    "criterion_instances",
    "run_symprop",
    "run_permissable",
    "run_reg_grade",
    "run_regdomthm",
    "run_rank2_theorem",
    "run_affine_heisenberg",
]


@dataclass(frozen=True)
class SweepConfig:
    """Bounds for the randomized and gridded sweeps.  Everything downstream
    of a config is deterministic, including the random instance set."""

    seed: int = 20260819
    instances: int = 500
    max_word: int = 10
    max_tau: int = 3
    max_d: int = 20
    max_root_height: int = 12
    realize_height_cutoff: int = 8
    symbolic_height_cutoff: int = 24
    cap: int | None = None


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    cases: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": [dict(f) for f in self.failures],
        }


# ---------------------------------------------------------------------------
# shared caches and small grid helpers

@lru_cache(maxsize=None)
def _gcm(matrix) -> GCM:
    return validate_gcm([list(row) for row in matrix])


@lru_cache(maxsize=None)
def _oracle(matrix, height: int) -> MultTable:
    return peterson_multiplicities(_gcm(matrix), height)


@lru_cache(maxsize=None)
def _algebra(matrix, height: int, cap=None) -> TruncatedAlgebra:
    return build_truncated(
        _gcm(matrix), height, mode="fast", cap=cap, table=_oracle(matrix, height)
    )


def _rank2_matrix(a: int, b: int):
    return ((2, -b), (-a, 2))


def _alternating_words(max_len: int) -> list:
    """All reduced words of an infinite rank-2 Weyl group up to max_len:
    the identity plus the two alternating words of each length."""
    out = [()]
    for ln in range(1, max_len + 1):
        for start in (1, 2):
            out.append(tuple(start if k % 2 == 0 else 3 - start for k in range(ln)))
    return out


def _finite_grading_taus(g: GCM, bound: int) -> list:
    return [
        t
        for t in product(range(bound + 1), repeat=g.n)
        if check_finite_grading(g, Coweight(t))
    ]


# ---------------------------------------------------------------------------
# suite: symprop — |Phi_w^d| <= 1 on the symmetric hyperbolics

def run_symprop(config: SweepConfig = SweepConfig()) -> SuiteReport:
    cases = 0
    failures = []
    for a in (3, 4, 5):
        g = _gcm(_rank2_matrix(a, a))
        taus = _finite_grading_taus(g, 5)
        for word in _alternating_words(12):
            inv = inversion_set(g, WeylWord.of(word))
            for tau in taus:
                tcw = Coweight(tau)
                grades = [grade_of(bb, tcw) for bb in inv]
                counts = Counter(grades)
                for d in range(1, 31):
                    cases += 1
                    if counts.get(d, 0) > 1:
                        failures.append(
                            {
                                "a": a,
                                "word": list(word),
                                "tau": list(tau),
                                "d": d,
                                "slice": [
                                    list(bb.coeffs)
                                    for bb, gr in zip(inv, grades)
                                    if gr == d
                                ],
                            }
                        )
    return SuiteReport("symprop", config.seed, cases, tuple(failures))


# ---------------------------------------------------------------------------
# suite: permissable — two-root slices happen only in the listed patterns

_PERMISSABLE_AB = ((3, 2), (2, 3), (5, 1), (1, 5), (6, 1), (7, 1))


def run_permissable(config: SweepConfig = SweepConfig()) -> SuiteReport:
    cases = 0
    failures = []
    for a, b in _PERMISSABLE_AB:
        g = _gcm(_rank2_matrix(a, b))
        taus = _finite_grading_taus(g, 5)
        for word in _alternating_words(12):
            ww = WeylWord.of(word)
            inv = inversion_set(g, ww)
            for tau in taus:
                tcw = Coweight(tau)
                counts = Counter(grade_of(bb, tcw) for bb in inv)
                for d in range(1, 31):
                    cases += 1
                    n = counts.get(d, 0)
                    if n <= 1:
                        continue
                    rec = {
                        "a": a,
                        "b": b,
                        "word": list(word),
                        "tau": list(tau),
                        "d": d,
                        "size": n,
                    }
                    if n > 2:
                        rec["problem"] = "slice has more than two roots"
                        failures.append(rec)
                        continue
                    if min(a, b) > 1:
                        rec["problem"] = "two-root slice with min(a,b) > 1"
                        failures.append(rec)
                        continue
                    try:
                        verdict = classify_intersection(g, ww, tcw, d)
                    except KmjmError as err:
                        rec["problem"] = f"classification failed: {err}"
                        failures.append(rec)
                        continue
                    if not verdict.exceptional:
                        rec["problem"] = f"verdict {verdict.kind} for a two-root slice"
                        failures.append(rec)
    return SuiteReport("permissable", config.seed, cases, tuple(failures))


# ---------------------------------------------------------------------------
# random instances shared by reg-grade and regdomthm

# Indecomposable and decomposable GCMs of rank <= 3 with entries >= -4,
# spanning finite, affine, hyperbolic and wild indefinite type.
_POOL = (
    ((2,),),
    # rank 2
    ((2, 0), (0, 2)),
    ((2, -1), (-1, 2)),
    ((2, -1), (-2, 2)),
    ((2, -2), (-1, 2)),
    ((2, -2), (-2, 2)),
    ((2, -1), (-3, 2)),
    ((2, -3), (-1, 2)),
    ((2, -3), (-3, 2)),
    ((2, -1), (-4, 2)),
    ((2, -4), (-1, 2)),
    ((2, -2), (-4, 2)),
    ((2, -4), (-2, 2)),
    ((2, -4), (-4, 2)),
    ((2, -2), (-3, 2)),
    ((2, -3), (-2, 2)),
    # rank 3
    ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    ((2, -2, 0), (-1, 2, -1), (0, -2, 2)),
    ((2, -4, 0), (-1, 2, -2), (0, -3, 2)),
    ((2, 0, -3), (0, 2, -1), (-2, -4, 2)),
    ((2, -1, -1), (-1, 2, -1), (-1, -1, 2)),
    ((2, -2, -1), (-2, 2, -3), (-1, -3, 2)),
    ((2, -4, -4), (-4, 2, -4), (-4, -4, 2)),
    ((2, -2, -4), (-1, 2, -2), (-1, -1, 2)),
    ((2, 0, 0), (0, 2, -1), (0, -1, 2)),
)


@dataclass(frozen=True)
class SweepInstance:
    index: int
    matrix: tuple
    word: tuple
    tau: tuple
    d: int

    def slice_roots(self) -> list:
        g = _gcm(self.matrix)
        return phi_w_d(g, WeylWord.of(self.word), Coweight(self.tau), self.d)

    def describe(self) -> dict:
        return {
            "instance": self.index,
            "matrix": [list(row) for row in self.matrix],
            "word": list(self.word),
            "tau": list(self.tau),
            "d": self.d,
        }


def _random_reduced_word(g: GCM, rng: random.Random, max_len: int, max_height: int):
    """Grow a reduced word letter by letter, keeping every inversion within
    the height budget; stops early when no letter extends it."""
    letters: list = []
    target = rng.randint(1, max_len)
    while len(letters) < target:
        cands = list(range(1, g.n + 1))
        rng.shuffle(cands)
        for i in cands:
            trial = WeylWord.of(letters + [i])
            if not is_reduced(g, trial):
                continue
            if max(bb.height for bb in inversion_set(g, trial)) > max_height:
                continue
            letters.append(i)
            break
        else:
            break
    return tuple(letters)


@lru_cache(maxsize=4)
def criterion_instances(config: SweepConfig = SweepConfig()):
    """The seeded random instance set: (GCM, reduced word, regular-dominant
    coweight, realized degree).  The degree is always realized by the slice,
    so every instance has a nonempty Phi_w^d."""
    rng = random.Random(config.seed)
    out = []
    for idx in range(config.instances):
        matrix = _POOL[rng.randrange(len(_POOL))]
        g = _gcm(matrix)
        word = _random_reduced_word(g, rng, config.max_word, config.max_root_height)
        tau = tuple(rng.randint(1, config.max_tau) for _ in range(g.n))
        tcw = Coweight(tau)
        grades = sorted(
            {
                grade_of(bb, tcw)
                for bb in inversion_set(g, WeylWord.of(word))
                if grade_of(bb, tcw) <= config.max_d
            }
        )
        # the first letter contributes a simple root of grade <= max_tau,
        # so there is always a realized degree within bounds
        d = rng.choice(grades)
        out.append(SweepInstance(idx, matrix, word, tau, d))
    return tuple(out)


def _oracle_heights(insts) -> dict:
    need: dict = {}
    for inst in insts:
        hmax = max(bb.height for bb in inst.slice_roots())
        need[inst.matrix] = max(need.get(inst.matrix, 0), 2 * hmax)
    return need


# ---------------------------------------------------------------------------
# suite: reg-grade — every random slice is a finite-type pi-system

def run_reg_grade(config: SweepConfig = SweepConfig()) -> SuiteReport:
    insts = criterion_instances(config)
    need = _oracle_heights(insts)
    failures = []
    for inst in insts:
        g = _gcm(inst.matrix)
        table = _oracle(inst.matrix, need[inst.matrix])
        rec = inst.describe()
        try:
            sigma = make_pi_system(g, inst.slice_roots(), table)
        except KmjmError as err:
            failures.append({**rec, "problem": f"pi-system rejected: {err}"})
            continue
        tag = classify_pi_type(sigma)
        if tag.kind != FINITE:
            failures.append({**rec, "problem": f"induced type is {tag.kind}"})
            continue
        if det_exact(sigma.b_matrix) == 0:
            failures.append({**rec, "problem": "induced matrix is singular"})
    return SuiteReport("reg-grade", config.seed, len(insts), tuple(failures))


# ---------------------------------------------------------------------------
# suite: regdomthm — every random slice extends to an sl2-triple

def run_regdomthm(config: SweepConfig = SweepConfig()) -> SuiteReport:
    insts = criterion_instances(config)
    need = _oracle_heights(insts)
    failures = []
    for inst in insts:
        g = _gcm(inst.matrix)
        table = _oracle(inst.matrix, need[inst.matrix])
        rec = inst.describe()
        roots = inst.slice_roots()
        rng = random.Random(config.seed * 1_000_003 + inst.index)
        coeffs = tuple(rng.choice((-3, -2, -1, 1, 2, 3)) for _ in roots)
        rec["coeffs"] = list(coeffs)
        try:
            sigma = make_pi_system(g, roots, table)
            triple = build_triple(sigma, coeffs)
        except KmjmError as err:
            failures.append({**rec, "problem": f"triple construction failed: {err}"})
            continue
        if not verify_symbolic(triple):
            failures.append({**rec, "problem": "symbolic relations failed"})
            continue
        hmax = max(bb.height for bb in roots)
        if hmax <= config.realize_height_cutoff:
            alg = _algebra(inst.matrix, config.realize_height_cutoff, config.cap)
            try:
                try:
                    ok = verify_realized(triple, alg, policy="transport")
                except HeightOutOfRange:
                    # the reflection strings of the transport path can poke
                    # above the window even when every root fits; the basis
                    # policy stays degree-local
                    ok = verify_realized(triple, alg, policy="basis")
            except KmjmError as err:
                failures.append({**rec, "problem": f"realization failed: {err}"})
                continue
            if not ok:
                failures.append({**rec, "problem": "realized relations failed"})
    return SuiteReport("regdomthm", config.seed, len(insts), tuple(failures))


# ---------------------------------------------------------------------------
# suite: rank2-theorem — every nonempty slice verdict extends to a triple

_PINNED_XY = ((1, 1), (2, 3), (1, -1))


def _check_single(g, alg, table, beta) -> str | None:
    try:
        sigma = make_pi_system(g, [beta], table)
        triple = build_triple(sigma)
        if not verify_symbolic(triple):
            return "symbolic relations failed"
        if beta.height <= alg.height:
            if not verify_realized(triple, alg, policy="transport"):
                return "realized relations failed"
    except KmjmError as err:
        return f"{type(err).__name__}: {err}"
    return None


def _check_pair(g, alg, verdict, x, y) -> str | None:
    try:
        t = build_exceptional_triple(g, verdict, x, y, alg)
        if not verify_triple_elements(alg, t):
            return "realized relations failed"
    except KmjmError as err:
        return f"{type(err).__name__}: {err}"
    return None


def run_rank2_theorem(config: SweepConfig = SweepConfig()) -> SuiteReport:
    cases = 0
    failures = []
    alg_h = config.max_root_height
    for a, b in _PERMISSABLE_AB:
        matrix = _rank2_matrix(a, b)
        g = _gcm(matrix)
        alg = _algebra(matrix, alg_h, config.cap)
        table = _oracle(matrix, 2 * config.symbolic_height_cutoff)
        taus = _finite_grading_taus(g, config.max_tau)
        checked: dict = {}
        for word in _alternating_words(6):
            ww = WeylWord.of(word)
            inv = inversion_set(g, ww)
            for tau in taus:
                tcw = Coweight(tau)
                counts = Counter(grade_of(bb, tcw) for bb in inv)
                for d in range(1, 13):
                    if not counts.get(d, 0):
                        continue
                    cases += 1
                    rec = {"a": a, "b": b, "word": list(word), "tau": list(tau), "d": d}
                    try:
                        verdict = classify_intersection(g, ww, tcw, d)
                    except KmjmError as err:
                        failures.append(
                            {**rec, "problem": f"classification failed: {err}"}
                        )
                        continue
                    if verdict.kind == "Single":
                        beta = verdict.root
                        if beta.height > config.symbolic_height_cutoff:
                            # beyond the verification window at this scale
                            continue
                        key = beta.coeffs
                        if key not in checked:
                            checked[key] = _check_single(g, alg, table, beta)
                    else:
                        key = (verdict.kind, tuple(bb.coeffs for bb in verdict.roots))
                        if key not in checked:
                            checked[key] = _check_pair(g, alg, verdict, 1, 1)
                    if checked[key]:
                        failures.append({**rec, "problem": checked[key]})
    # pinned exceptional grid: both repair cases, three coefficient pairs
    for a in (5, 6):
        matrix = _rank2_matrix(a, 1)
        g = _gcm(matrix)
        alg = _algebra(matrix, alg_h, config.cap)
        for word, d in (((1, 2), 1), ((2, 1, 2), 1)):
            verdict = classify_intersection(g, WeylWord.of(word), Coweight((1, 0)), d)
            for x, y in _PINNED_XY:
                cases += 1
                problem = _check_pair(g, alg, verdict, x, y)
                if problem:
                    failures.append(
                        {
                            "a": a,
                            "b": 1,
                            "word": list(word),
                            "tau": [1, 0],
                            "d": d,
                            "x": x,
                            "y": y,
                            "problem": problem,
                        }
                    )
    return SuiteReport("rank2-theorem", config.seed, cases, tuple(failures))


# ---------------------------------------------------------------------------
# suite: affine-heisenberg — the counterexample where no repair exists

def run_affine_heisenberg(config: SweepConfig = SweepConfig()) -> SuiteReport:
    matrix = _rank2_matrix(2, 2)
    g = _gcm(matrix)
    problems = []
    sigma = make_pi_system(
        g, [simple_root(2, 1), simple_root(2, 2)], _oracle(matrix, 2)
    )
    try:
        solve_mu(sigma.b_matrix)
        problems.append("solve_mu accepted the singular induced matrix")
    except SingularB:
        pass
    alg = _algebra(matrix, 6, config.cap)
    e = alg.e(1) + alg.e(2)
    z = alg.bracket(e, alg.f(1) + alg.f(2))
    if z.is_zero():
        problems.append("central witness [e, f_1 + f_2] vanished")
    for i in (1, 2):
        if not alg.bracket(z, alg.e(i)).is_zero():
            problems.append(f"[z, e_{i}] != 0")
        if not alg.bracket(z, alg.f(i)).is_zero():
            problems.append(f"[z, f_{i}] != 0")
    failures = tuple({"case": "A_1 affine", "problem": p} for p in problems)
    return SuiteReport("affine-heisenberg", config.seed, 1, failures)


SUITES = {
    "symprop": run_symprop,
    "permissable": run_permissable,
    "reg-grade": run_reg_grade,
    "regdomthm": run_regdomthm,
    "rank2-theorem": run_rank2_theorem,
    "affine-heisenberg": run_affine_heisenberg,
}
