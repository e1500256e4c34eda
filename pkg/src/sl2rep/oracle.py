"""Numeric verification of variety dimensions by Jacobian rank.

A point of the solution variety of m1^p1 ... mn^pn = sign*I is cut out
in C^(4n) by n determinant equations and the 4 entries of the word
equation; negative powers are evaluated through the adjugate so the
whole system stays polynomial.  At a smooth sample the local dimension
is 4n minus the rank of the complex Jacobian, with rank read off the
singular value spectrum (relative threshold, plus a minimum gap ratio
between the last kept and first dropped value; ambiguous spectra
reject the sample rather than guess).

Samples are drawn on a stratum of maximal dimension.  When the generic
stratum (random prefix, last matrix solved by a root branch) already
has top dimension, that is used; otherwise the sampler follows the
dimension recursion's argmax and places the prefix on the degenerate
locus where the prefix word is +-I, with the last matrix drawn from a
random eigenvalue-pair orbit.  Every sample stream is derived from
(master seed, sample index), so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dimension import dimension_table, not_two, product_power_dim
from .matrices import (
    IDENTITY,
    adjugate,
    determinant,
    eval_word,
    mat_power,
    matrix_roots,
    random_sl2,
)
from .presentations import validate_exponents
from .traces import (
    TraceClass,
    admissible_traces,
    central_root_classes,
    central_root_spectrum,
    classify_trace,
)


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-8      # max |equation| at an accepted sample
    rank_rel: float = 1e-8      # singular values below rank_rel * s_max count as zero
    trace: float = 1e-6         # numeric trace vs admissible class matching
    genericity: float = 1e-4    # reject generic samples with traces this close to +-2
    min_rank_gap: float = 1e3   # required s_rank / s_rank+1 ratio
    fd_step: float = 1e-6       # central difference step for cross-checks

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "rank_rel": self.rank_rel,
            "trace": self.trace,
            "genericity": self.genericity,
            "min_rank_gap": self.min_rank_gap,
        }


class OracleError(RuntimeError):
    pass


class ResidualError(OracleError):
    """Sample does not satisfy the equations to tolerance."""


class RankGapError(OracleError):
    """Singular value spectrum has no clean rank cut."""


_ELEM = tuple(
    np.array([[1.0 if (r, c) == pos else 0.0 for c in range(2)] for r in range(2)], dtype=complex)
    for pos in ((0, 0), (0, 1), (1, 0), (1, 1))
)
_ADJ_ELEM = tuple(adjugate(e) for e in _ELEM)

# prefix words larger than this push the float64 residual floor past the
# default acceptance tolerance, so oversized draws are retried
_PREFIX_NORM_CAP = 1e3
_REDRAW_LIMIT = 200


def _power_with_derivs(m: np.ndarray, p: int):
    """m^p (adjugate route for p < 0) and its four entry derivatives."""
    k = abs(p)
    if p >= 0:
        base = np.asarray(m, dtype=complex)
        dbase = _ELEM
    else:
        base = adjugate(m)
        dbase = _ADJ_ELEM
    powers = [IDENTITY.copy()]
    for _ in range(k):
        powers.append(powers[-1] @ base)
    value = powers[k]
    derivs = []
    for db in dbase:
        acc = np.zeros((2, 2), dtype=complex)
        for j in range(k):
            acc += powers[j] @ db @ powers[k - 1 - j]
        derivs.append(acc)
    return value, derivs


@dataclass(frozen=True)
class ConstraintSystem:
    """Polynomial equations cutting the variety out of C^(4n).

    exponents None means no word equation (free group): only the n
    determinant constraints remain.
    """

    num_matrices: int
    exponents: Optional[tuple[int, ...]] = None
    sign: int = 1

    def __post_init__(self):
        if self.num_matrices < 1:
            raise ValueError("need at least one matrix")
        if self.exponents is not None:
            exps = validate_exponents(self.exponents)
            if len(exps) != self.num_matrices:
                raise ValueError("exponent count must match matrix count")
            object.__setattr__(self, "exponents", exps)
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def ambient_dim(self) -> int:
        return 4 * self.num_matrices

    def residuals(self, mats) -> np.ndarray:
        mats = np.asarray(mats, dtype=complex)
        vals = [determinant(mats[i]) - 1.0 for i in range(self.num_matrices)]
        if self.exponents is not None:
            word = eval_word(mats, self.exponents)
            vals.extend((word - self.sign * IDENTITY).ravel())
        return np.array(vals, dtype=complex)

    def residual_norm(self, mats) -> float:
        return float(np.max(np.abs(self.residuals(mats))))

    def jacobian(self, mats) -> np.ndarray:
        """Complex Jacobian of residuals, by product-rule accumulation."""
        mats = np.asarray(mats, dtype=complex)
        n = self.num_matrices
        rows = n + (4 if self.exponents is not None else 0)
        jac = np.zeros((rows, 4 * n), dtype=complex)
        for i in range(n):
            a, b, c, d = mats[i].ravel()
            jac[i, 4 * i: 4 * i + 4] = (d, -c, -b, a)
        if self.exponents is not None:
            value = IDENTITY.copy()
            word_derivs = np.zeros((4 * n, 2, 2), dtype=complex)
            for i, p in enumerate(self.exponents):
                factor, factor_derivs = _power_with_derivs(mats[i], p)
                word_derivs = word_derivs @ factor
                for e in range(4):
                    word_derivs[4 * i + e] += value @ factor_derivs[e]
                value = value @ factor
            for r in range(4):
                jac[n + r, :] = word_derivs[:, r // 2, r % 2]
        return jac


def jacobian_fd(system: ConstraintSystem, mats, step: float = 1e-6) -> np.ndarray:
    """Central finite differences of the residual map, for cross-checks."""
    base = np.asarray(mats, dtype=complex).copy()
    rows = len(system.residuals(base))
    cols = system.ambient_dim
    jac = np.zeros((rows, cols), dtype=complex)
    for col in range(cols):
        i, e = divmod(col, 4)
        r, c = divmod(e, 2)
        plus = base.copy()
        plus[i, r, c] += step
        minus = base.copy()
        minus[i, r, c] -= step
        jac[:, col] = (system.residuals(plus) - system.residuals(minus)) / (2 * step)
    return jac


def _equilibrated(jac: np.ndarray) -> np.ndarray:
    # row/column scaling by nonzero scalars preserves rank but evens out
    # the huge magnitude spread high powers put into word rows
    out = jac.copy()
    row_scale = np.max(np.abs(out), axis=1)
    row_scale[row_scale == 0] = 1.0
    out /= row_scale[:, None]
    col_scale = np.max(np.abs(out), axis=0)
    col_scale[col_scale == 0] = 1.0
    out /= col_scale[None, :]
    return out


def jacobian_rank(jac: np.ndarray, rank_rel: float, min_gap: float) -> tuple[int, float]:
    """(rank, gap ratio); raises RankGapError when the cut is ambiguous."""
    if not np.all(np.isfinite(jac)):
        raise RankGapError("jacobian has non-finite entries")
    singular = np.linalg.svd(_equilibrated(jac), compute_uv=False)
    if singular[0] == 0:
        return 0, math.inf
    rank = int(np.sum(singular > rank_rel * singular[0]))
    if rank >= len(singular) or singular[rank] == 0:
        gap = math.inf
    else:
        gap = float(singular[rank - 1] / singular[rank])
    if gap < min_gap:
        raise RankGapError(f"singular value gap {gap:.3g} below {min_gap:.3g}")
    return rank, gap


@dataclass(frozen=True)
class LocalDimension:
    dim: int
    rank: int
    gap: float


def local_dimension(mats, system: ConstraintSystem, tol: Tolerances = Tolerances()) -> LocalDimension:
    """Local dimension 4n - rank(Jacobian) at a near-solution sample."""
    res = system.residual_norm(mats)
    if not math.isfinite(res) or res > tol.residual:
        raise ResidualError(f"residual {res:.3g} above {tol.residual:.3g}")
    rank, gap = jacobian_rank(system.jacobian(mats), tol.rank_rel, tol.min_rank_gap)
    return LocalDimension(system.ambient_dim - rank, rank, gap)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible stream for one (seed, sample index) pair."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _polish_last(prefix_word: np.ndarray, root: np.ndarray, power: int, sign: int,
                 steps: int = 4) -> np.ndarray:
    """Gauss-Newton refinement of the solved last matrix.

    Root extraction through an eigenbasis loses accuracy when the target
    matrix has large entries; a few corrector steps on the system
    (det m - 1, W m^power - sign I) pull the residual back to rounding
    level without leaving the chosen branch.
    """
    m = np.asarray(root, dtype=complex)
    best, best_res = m, math.inf
    for _ in range(steps + 1):
        value, derivs = _power_with_derivs(m, power)
        fvec = np.concatenate((
            [determinant(m) - 1.0],
            (prefix_word @ value - sign * IDENTITY).ravel(),
        ))
        res = float(np.max(np.abs(fvec)))
        if not math.isfinite(res):
            break
        if res < best_res:
            best, best_res = m, res
        if res < 1e-13:
            break
        a, b, c, d = m.ravel()
        jac = np.zeros((5, 4), dtype=complex)
        jac[0] = (d, -c, -b, a)
        for e in range(4):
            jac[1:, e] = (prefix_word @ derivs[e]).ravel()
        delta = np.linalg.lstsq(jac, -fvec, rcond=None)[0]
        m = m + delta.reshape(2, 2)
    return best


def complete_point(prefix, exponents, sign: int, branch: int):
    """Extend n-1 prefix matrices to a word solution, or None if the
    required root class is empty (the even-power parabolic obstruction).

    The last matrix solves mn^pn = sign * W^-1 for the prefix word W:
    a |pn|-th root of sign * W^-1 when pn > 0, of sign * W when pn < 0.
    branch picks among root branches modulo their count.
    """
    exps = validate_exponents(exponents)
    n = len(exps)
    prefix = [np.asarray(m, dtype=complex) for m in prefix]
    if len(prefix) != n - 1:
        raise ValueError(f"need {n - 1} prefix matrices, got {len(prefix)}")
    word = eval_word(prefix, exps[:-1])
    last = exps[-1]
    target = sign * (adjugate(word) if last > 0 else word)
    roots = matrix_roots(target, abs(last))
    if not roots:
        return None
    polished = _polish_last(word, roots[branch % len(roots)], last, sign)
    return np.stack(prefix + [polished])


def sample_point(exponents, sign: int, branch: int, rng: np.random.Generator):
    """Generic-stratum sample: random prefix, root branch for the last."""
    exps = validate_exponents(exponents)
    prefix = [random_sl2(rng) for _ in range(len(exps) - 1)]
    return complete_point(prefix, exps, sign, branch)


@dataclass(frozen=True)
class SamplePlan:
    """Where to draw samples so they land on a top-dimensional stratum."""

    exponents: tuple[int, ...]
    sign: int
    kind: str  # "generic" | "stratum" | "leaf"
    fiber_sign: Optional[int] = None      # stratum: last matrix solves x^k = fiber_sign*I
    prefix: Optional["SamplePlan"] = None


def build_plan(exponents, sign: int) -> SamplePlan:
    """Follow the dimension recursion's argmax to a sampling strategy.

    Ties prefer the generic stratum, then the sign-flip stratum; for
    words of length >= 3 the generic stratum always attains the
    maximum, so strata only appear for two-letter words.
    """
    exps = validate_exponents(exponents)
    n = len(exps)
    if n == 1:
        return SamplePlan(exps, sign, "leaf")
    table = dimension_table(exps)
    k = abs(exps[-1])
    same = table[n - 2][sign] + 2 * not_two(k)
    flip = table[n - 2][-sign] + 2
    floor = 3 * (n - 1)
    top = max(same, flip, floor)
    if floor == top:
        return SamplePlan(exps, sign, "generic")
    if flip == top:
        return SamplePlan(exps, sign, "stratum", fiber_sign=-1,
                          prefix=build_plan(exps[:-1], -sign))
    return SamplePlan(exps, sign, "stratum", fiber_sign=1,
                      prefix=build_plan(exps[:-1], sign))


def _random_conjugator(rng: np.random.Generator, max_cond: float = 50.0) -> np.ndarray:
    for _ in range(64):
        s = random_sl2(rng)
        if np.linalg.norm(s) * np.linalg.norm(adjugate(s)) <= max_cond:
            return s
    return s


def _sample_orbit_point(k: int, target_sign: int, rng: np.random.Generator) -> np.ndarray:
    """Random point on a random eigenvalue-pair orbit of {A : A^k = target_sign*I}."""
    classes = central_root_classes(k, target_sign)
    if not classes.orbits:
        raise OracleError(f"no orbit components for power {k}, sign {target_sign}")
    cls = classes.orbits[int(rng.integers(len(classes.orbits)))]
    zeta = np.exp(1j * np.pi * float(cls.angle))
    conj = _random_conjugator(rng)
    return conj @ np.diag([zeta, 1 / zeta]).astype(complex) @ (adjugate(conj) / determinant(conj))


@dataclass
class Sample:
    mats: Optional[np.ndarray]
    witness_traces: list = field(default_factory=list)
    obstructed: bool = False


def sample_from_plan(plan: SamplePlan, branch: int, rng: np.random.Generator) -> Sample:
    if plan.kind == "leaf":
        k = abs(plan.exponents[0])
        classes = central_root_classes(k, plan.sign)
        if classes.orbits:
            return Sample(np.stack([_sample_orbit_point(k, plan.sign, rng)]))
        eta = classes.central[branch % len(classes.central)]
        return Sample(np.stack([eta * IDENTITY]))
    if plan.kind == "stratum":
        inner = sample_from_plan(plan.prefix, branch, rng)
        if inner.mats is None:
            return inner
        k = abs(plan.exponents[-1])
        fiber = _sample_orbit_point(k, plan.fiber_sign, rng)
        return Sample(np.concatenate([inner.mats, fiber[None, :, :]]),
                      inner.witness_traces)
    # generic: every trace met along the construction is a genericity witness
    exps = plan.exponents
    prefix = []
    partial_traces = []
    partial = IDENTITY.copy()
    for p in exps[:-1]:
        # keep the running word below the cap so the residual floor
        # eps * |W|^2 stays well under the acceptance tolerance
        m = random_sl2(rng)
        step = partial @ mat_power(m, p)
        for _ in range(_REDRAW_LIMIT):
            if np.all(np.isfinite(step)) and np.max(np.abs(step)) <= _PREFIX_NORM_CAP:
                break
            m = random_sl2(rng)
            step = partial @ mat_power(m, p)
        prefix.append(m)
        partial = step
        partial_traces.append(complex(np.trace(partial)))
    witnesses = [complex(np.trace(m)) for m in prefix]
    witnesses.extend(partial_traces)
    last = exps[-1]
    target = plan.sign * (adjugate(partial) if last > 0 else partial)
    witnesses.append(complex(np.trace(target)))
    roots = matrix_roots(target, abs(last))
    if not roots:
        return Sample(None, witnesses, obstructed=True)
    polished = _polish_last(partial, roots[branch % len(roots)], last, plan.sign)
    return Sample(np.stack(prefix + [polished]), witnesses)


def _near_central_trace(witnesses, tol: float) -> bool:
    return any(min(abs(w - 2), abs(w + 2)) < tol for w in witnesses)


@dataclass
class VerificationReport:
    """Outcome of a sampling run against a predicted dimension or census."""

    kind: str  # "dimension" | "central-roots"
    inputs: dict
    seed: int
    tolerances: Tolerances
    samples_requested: int
    samples_accepted: int
    rejections: dict[str, int]
    local_dim_histogram: dict[int, int]
    consensus_dim: Optional[int]
    predicted_dim: int
    agreement: float
    min_rank_gap: float
    trace_class_tallies: dict[str, int]
    central_checks: dict[str, int]
    passed: bool

    def to_dict(self) -> dict:
        gap = self.min_rank_gap
        return {
            "kind": self.kind,
            "inputs": dict(self.inputs),
            "seed": self.seed,
            "tolerances": self.tolerances.to_dict(),
            "samples_requested": self.samples_requested,
            "samples_accepted": self.samples_accepted,
            "rejections": {k: self.rejections[k] for k in sorted(self.rejections)},
            "local_dim_histogram": {
                str(d): self.local_dim_histogram[d] for d in sorted(self.local_dim_histogram)
            },
            "consensus_dim": self.consensus_dim,
            "predicted_dim": self.predicted_dim,
            "agreement": self.agreement,
            "min_rank_gap": gap if math.isfinite(gap) else "inf",
            "trace_class_tallies": {
                k: self.trace_class_tallies[k] for k in sorted(self.trace_class_tallies)
            },
            "central_checks": {k: self.central_checks[k] for k in sorted(self.central_checks)},
            "pass": self.passed,
        }


def _consensus(histogram: dict[int, int]) -> Optional[int]:
    if not histogram:
        return None
    best_count = max(histogram.values())
    return min(d for d, c in histogram.items() if c == best_count)


def verify_dimension(
    exponents,
    sign: int = 1,
    num_samples: int = 100,
    seed: int = 0,
    tol: Tolerances = Tolerances(),
) -> VerificationReport:
    """Sample the variety of m1^p1 ... mn^pn = sign*I and compare local
    Jacobian dimensions against the recursion's prediction.

    Passes only when at least one sample is accepted, every accepted
    sample reports the same local dimension, and that consensus equals
    the predicted dimension.  Root branches are swept round-robin via
    the sample index.  Word lengths are capped at 8 as a cost guard.
    """
    exps = validate_exponents(exponents)
    if not 2 <= len(exps) <= 8:
        raise ValueError(f"verification covers word lengths 2..8, got {len(exps)}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if num_samples < 1:
        raise ValueError("need at least one sample")
    predicted = product_power_dim(exps, sign).dim
    plan = build_plan(exps, sign)
    system = ConstraintSystem(len(exps), exps, sign)
    histogram: dict[int, int] = {}
    rejections = {"obstructed": 0, "genericity": 0, "residual": 0, "rank_gap": 0}
    min_gap = math.inf
    for index in range(num_samples):
        # extreme draws can overflow intermediates; the rejection gates
        # below handle those, so the float warnings are only noise
        with np.errstate(all="ignore"):
            sample = sample_from_plan(plan, index, sample_rng(seed, index))
            if _near_central_trace(sample.witness_traces, tol.genericity):
                rejections["genericity"] += 1
                continue
            if sample.mats is None:
                rejections["obstructed"] += 1
                continue
            try:
                local = local_dimension(sample.mats, system, tol)
            except ResidualError:
                rejections["residual"] += 1
                continue
            except RankGapError:
                rejections["rank_gap"] += 1
                continue
        histogram[local.dim] = histogram.get(local.dim, 0) + 1
        min_gap = min(min_gap, local.gap)
    accepted = sum(histogram.values())
    consensus = _consensus(histogram)
    passed = bool(accepted > 0 and len(histogram) == 1 and consensus == predicted)
    return VerificationReport(
        kind="dimension",
        inputs={"exponents": list(exps), "sign": sign},
        seed=seed,
        tolerances=tol,
        samples_requested=num_samples,
        samples_accepted=accepted,
        rejections=rejections,
        local_dim_histogram=histogram,
        consensus_dim=consensus,
        predicted_dim=predicted,
        agreement=(histogram.get(consensus, 0) / accepted) if accepted else 0.0,
        min_rank_gap=min_gap,
        trace_class_tallies={},
        central_checks={},
        passed=passed,
    )


def verify_central_roots(
    p: int,
    sign: int = 1,
    num_samples: int = 24,
    seed: int = 0,
    tol: Tolerances = Tolerances(),
) -> VerificationReport:
    """Check the component census of {A : A^p = sign*I} numerically.

    Central members must be isolated (local dimension 0 from a
    full-rank Jacobian).  Each eigenvalue-pair orbit is sampled at
    random conjugates; every accepted sample must have local dimension
    2 and a trace matching its admissible class.  Passes when all of
    that holds and the sampled class set matches the expected census.
    """
    classes = central_root_classes(p, sign)
    spectrum = central_root_spectrum(p, sign)
    predicted = spectrum.dimension()
    system = ConstraintSystem(1, (p,), sign)
    traces = admissible_traces(p, sign)
    ok = True
    central_checks: dict[str, int] = {}
    for eta in classes.central:
        label = "+2" if eta == 1 else "-2"
        local = local_dimension(np.stack([eta * IDENTITY]), system, tol)
        central_checks[label] = local.dim
        if local.dim != 0:
            ok = False
    histogram: dict[int, int] = {}
    tallies: dict[str, int] = {}
    rejections = {"obstructed": 0, "genericity": 0, "residual": 0, "rank_gap": 0}
    min_gap = math.inf
    per_class = 0
    if classes.orbits:
        per_class = max(1, -(-num_samples // len(classes.orbits)))
    for class_index, cls in enumerate(classes.orbits):
        for rep in range(per_class):
            index = class_index * per_class + rep
            rng = sample_rng(seed, index)
            zeta = np.exp(1j * np.pi * float(cls.angle))
            conj = _random_conjugator(rng)
            mat = conj @ np.diag([zeta, 1 / zeta]).astype(complex) @ (
                adjugate(conj) / determinant(conj)
            )
            try:
                local = local_dimension(np.stack([mat]), system, tol)
            except ResidualError:
                rejections["residual"] += 1
                continue
            except RankGapError:
                rejections["rank_gap"] += 1
                continue
            histogram[local.dim] = histogram.get(local.dim, 0) + 1
            min_gap = min(min_gap, local.gap)
            matched = classify_trace(np.trace(mat), traces, tol.trace)
            if matched != cls or local.dim != 2:
                ok = False
            if matched is not None:
                tallies[matched.label()] = tallies.get(matched.label(), 0) + 1
    accepted = sum(histogram.values())
    sampled_classes = len(tallies)
    if classes.orbits:
        consensus = _consensus(histogram)
        if consensus != 2 or sampled_classes != spectrum.count(2):
            ok = False
    else:
        consensus = 0 if classes.central else None
    passed = bool(ok and consensus == predicted)
    return VerificationReport(
        kind="central-roots",
        inputs={"power": p, "sign": sign},
        seed=seed,
        tolerances=tol,
        samples_requested=per_class * len(classes.orbits),
        samples_accepted=accepted,
        rejections=rejections,
        local_dim_histogram=histogram,
        consensus_dim=consensus,
        predicted_dim=predicted,
        agreement=(histogram.get(consensus, 0) / accepted) if accepted else 0.0,
        min_rank_gap=min_gap,
        trace_class_tallies=tallies,
        central_checks=central_checks,
        passed=passed,
    )
