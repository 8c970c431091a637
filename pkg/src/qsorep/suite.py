"""Desk-scale verification grid and the eight acceptance checks.

Each ``criterion_*`` function returns a :class:`CriterionResult`; ``run_all``
runs them in order.  Built representations are cached per spec so the
relation, irreducibility and fingerprint checks share one build.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .oracles import brute_force_patterns
from .patterns import Flavor, HighestWeight, enumerate_patterns, lcoords, validate_weight
from .qnum import QParam, half_inverse_gap
from .repmatrix import Kind, RepMatrices, RepSpec, SignVector, build, coeff_C
from .verify import (
    check_relations,
    commutant_dimension,
    decompose_prime,
    direct_sum,
    identify_blocks,
    spectral_fingerprint,
)

GRID_N = (3, 4, 5, 6)
GRID_Q = (1.2, 2.0)
SAMPLED_SIGNS = 8
SIGN_SEED = 20240521


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} -- {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": bool(self.passed),
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# -- grid -----------------------------------------------------------------------

def classical_weights(n: int, max2: int = 5) -> list[HighestWeight]:
    """Dominant classical weights with |entries| in {0, 1/2, ..., 5/2}.

    For even ``n`` the last entry also takes negative values.
    """
    size = n // 2
    out = []
    for parity in (0, 1):
        vals = [v for v in range(0, max2 + 1) if v % 2 == parity]
        for combo in itertools.combinations_with_replacement(sorted(vals, reverse=True), size):
            entries = list(combo)
            candidates = [entries]
            if n % 2 == 0 and entries[-1] != 0:
                candidates.append(entries[:-1] + [-entries[-1]])
            for e in candidates:
                w = HighestWeight(n, tuple(e), Flavor.CLASSICAL)
                if validate_weight(w):
                    out.append(w)
    return out


def nonclassical_weights(n: int, max2: int = 5) -> list[HighestWeight]:
    vals = sorted((v for v in range(1, max2 + 1, 2)), reverse=True)
    return [
        HighestWeight(n, combo, Flavor.NONCLASSICAL)
        for combo in itertools.combinations_with_replacement(vals, n // 2)
    ]


def sign_vectors(n: int) -> list[SignVector]:
    """All sign vectors for ``n <= 4``; a fixed sample of eight beyond."""
    every = SignVector.all(n)
    if n <= 4:
        return every
    rng = np.random.default_rng(SIGN_SEED + n)
    picks = sorted(rng.choice(len(every), size=SAMPLED_SIGNS, replace=False))
    return [every[i] for i in picks]


def grid_specs(ns=GRID_N, qs=GRID_Q) -> list[RepSpec]:
    specs = []
    for q in qs:
        qp = QParam(q)
        for n in ns:
            specs.extend(RepSpec(w, qp, Kind.CLASSICAL) for w in classical_weights(n))
            for w in nonclassical_weights(n):
                specs.extend(RepSpec(w, qp, Kind.NONCLASSICAL, s) for s in sign_vectors(n))
    return specs


@lru_cache(maxsize=None)
def built(spec: RepSpec) -> RepMatrices:
    return build(spec)


def describe(spec: RepSpec) -> str:
    signs = f" eps={spec.signs}" if spec.signs else ""
    return f"{spec.kind.value} n={spec.weight.n} m={spec.weight}{signs} q={spec.q.q}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- criteria -------------------------------------------------------------------

@_timed
def criterion_1(tol: float = 1e-9) -> CriterionResult:
    """Defining relations over the full grid."""
    worst, worst_label, fails = 0.0, "", []
    specs = grid_specs()
    for spec in specs:
        rep = built(spec)
        report = check_relations(rep, tol)
        if report.max_residual > worst:
            worst, worst_label = report.max_residual, describe(spec)
        if not report.passed:
            fails.append(f"{describe(spec)} {report.worst}")
    detail = f"{len(specs)} representations, max residual {worst:.2e} ({worst_label})"
    if fails:
        detail += f"; {len(fails)} failing, first: {fails[0]}"
    return CriterionResult(1, "relation suite", not fails, detail, data={"max_residual": worst})


@_timed
def criterion_2(tol: float = 1e-13) -> CriterionResult:
    """One-dimensional representations, n = 3..7, all sign vectors."""
    worst_entry, worst_rel, count = 0.0, 0.0, 0
    for q in (1.2, 2.0, 4.0):
        qp = QParam(q)
        expected_scale = 1.0 / (math.sqrt(q) - 1.0 / math.sqrt(q))
        for n in range(3, 8):
            w = HighestWeight(n, (1,) * (n // 2), Flavor.NONCLASSICAL)
            for s in SignVector.all(n):
                rep = build(RepSpec(w, qp, Kind.ONEDIM, s))
                nc = build(RepSpec(w, qp, Kind.NONCLASSICAL, s))
                for k in range(2, n + 1):
                    exp = s.eps(k) * expected_scale
                    worst_entry = max(
                        worst_entry,
                        abs(rep[k][0, 0] - exp) / abs(exp),
                        abs(nc[k][0, 0] - exp) / abs(exp),
                    )
                worst_rel = max(worst_rel, check_relations(rep).max_residual)
                count += 1
    ok = worst_entry < 4 * np.finfo(float).eps and worst_rel < tol
    detail = (
        f"{count} sign vectors x q; max relative entry error {worst_entry:.1e}, "
        f"max relation residual {worst_rel:.1e} (tol {tol:g})"
    )
    return CriterionResult(2, "one-dimensional suite", ok, detail)


@_timed
def criterion_3(tol: float = 1e-8, cap: int = 200) -> CriterionResult:
    """Commutant dimension 1 on the grid, 2 for a constructed direct sum."""
    bad, checked, skipped = [], 0, 0
    for spec in grid_specs():
        rep = built(spec)
        if rep.dim > cap:
            skipped += 1
            continue
        d = commutant_dimension(rep, tol, cap)
        checked += 1
        if d != 1:
            bad.append(f"{describe(spec)} -> {d}")
    w = HighestWeight(3, (1,), Flavor.NONCLASSICAL)
    qp = QParam(2.0)
    a = build(RepSpec(w, qp, Kind.ONEDIM, SignVector((1, 1))))
    b = build(RepSpec(w, qp, Kind.ONEDIM, SignVector((1, -1))))
    control = commutant_dimension(direct_sum(a, b), tol, cap)
    c = built(RepSpec(HighestWeight(4, (2, 0)), qp))
    d = built(RepSpec(HighestWeight(4, (2, 2)), qp))
    control_big = commutant_dimension(direct_sum(c, d), tol, cap)
    ok = not bad and control == 2 and control_big == 2
    detail = (
        f"{checked} irreducible (dim <= {cap}, {skipped} above cap); "
        f"direct-sum controls -> {control}, {control_big}"
    )
    if bad:
        detail += f"; {len(bad)} failing, first: {bad[0]}"
    return CriterionResult(3, "irreducibility", ok, detail)


def prime_weights(n: int, max2: int = 5) -> list[HighestWeight]:
    vals = sorted(range(1, max2 + 1, 2), reverse=True)
    return [
        HighestWeight(n, combo, Flavor.CLASSICAL)
        for combo in itertools.combinations_with_replacement(vals, n // 2)
    ]


def even_sign_choices(n: int) -> list[SignVector]:
    """Sign vectors with every odd component +1 (the prime kind reads only even ones)."""
    evens = [k for k in range(2, n + 1) if k % 2 == 0]
    out = []
    for choice in itertools.product((1, -1), repeat=len(evens)):
        vals = dict(zip(evens, choice))
        out.append(SignVector(tuple(vals.get(k, 1) for k in range(2, n + 1))))
    return out


@_timed
def criterion_4(tol: float = 1e-9, match_tol: float = 1e-8) -> CriterionResult:
    """Prime representation splits into matched nonclassical blocks."""
    problems, cases, max_leak = [], 0, 0.0
    for q in GRID_Q:
        qp = QParam(q)
        for n in (3, 4, 5):
            expected_blocks = 2 ** ((n - 1) // 2)
            for w in prime_weights(n):
                for signs in even_sign_choices(n):
                    spec = RepSpec(w, qp, Kind.PRIME, signs)
                    label = describe(spec)
                    rep = build(spec)
                    try:
                        report = decompose_prime(rep, tol)
                    except ArithmeticError as exc:
                        problems.append(f"{label}: {exc}")
                        continue
                    cases += 1
                    max_leak = max(max_leak, report.invariance_residual)
                    if len(report.blocks) != expected_blocks:
                        problems.append(f"{label}: {len(report.blocks)} blocks")
                    if sum(b.dim for b in report.blocks) != rep.dim:
                        problems.append(f"{label}: block dims do not sum to {rep.dim}")
                    hits = identify_blocks(report, match_tol)
                    seen = set()
                    for block, h in zip(report.blocks, hits):
                        if len(h) != 1:
                            problems.append(f"{label}: block {block.odd_signs} matched {len(h)}")
                            continue
                        sv = h[0]
                        odd = {k: sv.eps(k) for k in block.odd_signs}
                        even_ok = all(sv.eps(k) == signs.eps(k) for k in range(2, n + 1, 2))
                        if odd != block.odd_signs or not even_ok:
                            problems.append(f"{label}: block {block.odd_signs} matched {sv}")
                        seen.add(sv)
                    if len(seen) != expected_blocks:
                        problems.append(f"{label}: matches are not a bijection")
    detail = f"{cases} decompositions, max leakage {max_leak:.1e}"
    if problems:
        detail += f"; {len(problems)} problems, first: {problems[0]}"
    return CriterionResult(4, "prime decomposition", not problems, detail)


@_timed
def criterion_5(tol: float = 1e-8) -> CriterionResult:
    """Pairwise-distinct fingerprints at q = 2 for n <= 4."""
    specs = grid_specs(ns=(3, 4), qs=(2.0,))
    prints = [(describe(s), spectral_fingerprint(built(s))) for s in specs]
    clashes = [
        (a[0], b[0])
        for a, b in itertools.combinations(prints, 2)
        if not a[1].distinct_from(b[1], tol)
    ]
    detail = f"{len(prints)} representations, {len(prints) * (len(prints) - 1) // 2} pairs"
    if clashes:
        detail += f"; {len(clashes)} indistinct, first: {clashes[0]}"
    return CriterionResult(5, "nonequivalence", not clashes, detail)


@_timed
def criterion_6() -> CriterionResult:
    """Enumeration agrees with the brute-force oracle."""
    bad, count = [], 0
    for n in GRID_N:
        for w in classical_weights(n) + nonclassical_weights(n):
            count += 1
            if enumerate_patterns(w) != brute_force_patterns(w):
                bad.append(f"n={n} {w.flavor.value} {w}")
    for two_j in range(0, 8):
        if len(enumerate_patterns(HighestWeight(3, (two_j,)))) != two_j + 1:
            bad.append(f"so_3 weight {two_j}/2")
    if len(enumerate_patterns(HighestWeight(5, (2, 0)))) != 5:
        bad.append("so_5 (1,0)")
    detail = f"{count} weights against brute force; so_3 (j) -> 2j+1, so_5 (1,0) -> 5"
    if bad:
        detail += f"; mismatches: {bad[:3]}"
    return CriterionResult(6, "dimension oracle", not bad, detail)


def _so3_limit(m: int) -> tuple[np.ndarray, np.ndarray]:
    """q -> 1 limits of the classical so_3 matrices for integer weight ``m``.

    ``I_21 = diag(i k)`` and ``I_32 |k> = (1/2) sqrt((m+k+1)(m-k)) |k+1>
    - (1/2) sqrt((m+k)(m-k+1)) |k-1>`` over ``k = -m..m``.
    """
    ks = list(range(-m, m + 1))
    d = len(ks)
    i21 = np.diag([1j * k for k in ks])
    i32 = np.zeros((d, d), dtype=complex)
    for c, k in enumerate(ks):
        if k + 1 <= m:
            i32[c + 1, c] = 0.5 * math.sqrt((m + k + 1) * (m - k))
        if k - 1 >= -m:
            i32[c - 1, c] = -0.5 * math.sqrt((m + k) * (m - k + 1))
    return i21, i32


@_timed
def criterion_7(h_small: float = 1e-4) -> CriterionResult:
    """q -> 1 behaviour: classical entries converge, nonclassical diverge like 1/h."""
    q = 1 + 1e-4
    rep = build(RepSpec(HighestWeight(3, (2,)), QParam(q)))
    i21, i32 = _so3_limit(1)
    err = max(np.abs(rep[2] - i21).max(), np.abs(rep[3] - i32).max())
    qh = math.exp(h_small)
    one = build(
        RepSpec(HighestWeight(3, (1,), Flavor.NONCLASSICAL), QParam(qh), Kind.ONEDIM, SignVector((1, 1)))
    )
    value = one[2][0, 0].real
    scaled = value * h_small            # 1/(q^{1/2} - q^{-1/2}) = 1/(2 sinh(h/2)) ~ 1/h
    exact = value - half_inverse_gap(qh)
    ok = err < 1e-3 and abs(scaled - 1) < 0.01 and abs(exact) < 1e-12 * value
    detail = (
        f"classical max entry deviation {err:.1e} at q=1+1e-4; "
        f"one-dim value * h = {scaled:.8f} at h={h_small:g}"
    )
    return CriterionResult(7, "classical limit", ok, detail, data={"value_times_h": scaled})


@_timed
def criterion_8() -> CriterionResult:
    """``C_{2p-1}`` is exactly 0 wherever ``l_{p,2p} = 0``."""
    hits, bad = 0, []
    for q in GRID_Q:
        for n in GRID_N:
            for w in classical_weights(n):
                for xi in enumerate_patterns(w):
                    L = lcoords(xi)
                    for p in range(1, n // 2 + 1):
                        if L.l2(p, 2 * p) != 0:
                            continue
                        hits += 1
                        value = coeff_C(L, p, q)
                        if value != 0:
                            bad.append(f"{xi} p={p}: {value!r}")
    detail = f"{hits} (pattern, p) cases with l_(p,2p) = 0"
    if bad:
        detail += f"; nonzero: {bad[:2]}"
    return CriterionResult(8, "vanishing rule", not bad and hits > 0, detail)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


def run_all(only=None, echo=print) -> list[CriterionResult]:
    results = []
    for number, fn in CRITERIA.items():
        if only and number not in only:
            continue
        res = fn()
        if echo:
            echo(res.line())
        results.append(res)
    return results
