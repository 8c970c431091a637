"""Numerical checks on built representations.

Defining relations, commutant dimension (Schur's lemma), spectral
fingerprints for nonequivalence probes, and the splitting of the prime
representation into nonclassical blocks.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import mpmath
import numpy as np
import scipy.linalg

from .patterns import Basis, Flavor, GTPattern, HighestWeight
from .qnum import as_qparam
from .repmatrix import Kind, RepMatrices, RepSpec, SignVector, build_nonclassical


class DimensionMismatchError(ValueError):
    pass


class CapExceededError(ValueError):
    pass


class LeakageError(ArithmeticError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _fro(x: np.ndarray) -> float:
    if x.dtype == object:
        return float(mpmath.sqrt(mpmath.fsum(abs(v) ** 2 for v in x.flat)))
    return float(np.linalg.norm(x))


# -- relations --------------------------------------------------------------

@dataclass
class RelationReport:
    residuals: dict[str, float]
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def worst(self) -> str | None:
        if not self.residuals:
            return None
        return max(self.residuals, key=self.residuals.get)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol

    def failures(self) -> list[str]:
        return [key for key, r in self.residuals.items() if not r < self.tol]

    def to_json(self) -> dict:
        return {
            "residuals": self.residuals,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def check_relations(rep: RepMatrices, tol: float = 1e-9, q=None) -> RelationReport:
    """Evaluate the three defining-relation families as matrix identities.

    Residuals are ``||LHS - RHS||_F / (1 + ||RHS||_F)``.  Keys look like
    ``"(1) i=3"`` (the cubic relation between ``I_{4,3}`` and ``I_{3,2}``)
    and ``"(3) 2,4"`` (commutation of ``I_{2,1}`` and ``I_{4,3}``).
    """
    gens = rep.generators
    n = max(gens)
    if sorted(gens) != list(range(2, n + 1)):
        raise DimensionMismatchError(f"generators must be I_{{k,k-1}} for k = 2..{n}")
    shapes = {m.shape for m in gens.values()}
    if len(shapes) != 1 or any(a != b for a, b in shapes):
        raise DimensionMismatchError(f"generator shapes disagree: {sorted(shapes)}")
    if q is None:
        if rep.spec is None:
            raise ValueError("check_relations needs q when the representation has no spec")
        q = rep.spec.q
    q = as_qparam(q).value
    c = q + 1 / q
    res: dict[str, float] = {}
    for i in range(2, n):
        a, b = gens[i + 1], gens[i]
        bb, aa = b @ b, a @ a
        lhs1 = a @ bb - c * (b @ a @ b) + bb @ a
        res[f"(1) i={i}"] = _fro(lhs1 + a) / (1 + _fro(a))
        lhs2 = aa @ b - c * (a @ b @ a) + b @ aa
        res[f"(2) i={i}"] = _fro(lhs2 + b) / (1 + _fro(b))
    for i in range(2, n + 1):
        for j in range(i + 2, n + 1):
            comm = gens[i] @ gens[j] - gens[j] @ gens[i]
            res[f"(3) {i},{j}"] = _fro(comm)
    return RelationReport(res, tol)


# -- commutant --------------------------------------------------------------

def _complex_mats(rep: RepMatrices) -> list[np.ndarray]:
    return [np.asarray(m, dtype=complex) for m in rep.ordered()]


def _count_small(s: np.ndarray, tol: float, size: int) -> int:
    """Null-space size of an operator with ``size`` columns and singular values ``s``."""
    smax = s.max() if s.size else 0.0
    if smax == 0:
        return size
    return int(np.sum(s < tol * smax)) + (size - s.size)


def commutant_dimension_direct(mats: list[np.ndarray], tol: float = 1e-8) -> int:
    """Null-space dimension of ``X -> ([M_k, X])_k`` on the full ``dim^2`` space.

    Uses ``vec(MX - XM) = (I (x) M - M^T (x) I) vec(X)`` stacked over
    generators.  Memory grows like ``dim^4``; keep ``dim`` small.
    """
    d = mats[0].shape[0]
    eye = np.eye(d)
    op = np.vstack([np.kron(eye, m) - np.kron(m.T, eye) for m in mats])
    s = scipy.linalg.svd(op, compute_uv=False)
    return _count_small(s, tol, d * d)


def _words(mats, max_len):
    for length in range(1, max_len + 1):
        for word in itertools.product(range(len(mats)), repeat=length):
            yield word


def _word_matrix(mats, word):
    out = mats[word[0]]
    for w in word[1:]:
        out = out @ mats[w]
    return out


def _clusters(evals: np.ndarray, rel: float) -> list[list[int]]:
    scale = max(np.abs(evals).max(), 1.0)
    order = np.argsort(evals.real)
    parent = list(range(len(evals)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a_pos, a in enumerate(order):
        for b in order[a_pos + 1:]:
            if evals[b].real - evals[a].real > rel * scale:
                break
            if abs(evals[a] - evals[b]) <= rel * scale:
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for i in range(len(evals)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def commutant_dimension_reduced(
    mats: list[np.ndarray], tol: float = 1e-8, seed: int = 0, attempts: int = 4
) -> int:
    """Commutant dimension restricted to the commutant of a generic element.

    Any matrix commuting with every generator commutes with a random
    combination ``H`` of words of length <= 3.  In an eigenbasis of ``H`` that
    commutant is block diagonal over eigenvalue clusters, so only those
    entries remain unknown.  With a simple spectrum the constraint operator is
    a weighted graph incidence matrix.
    """
    d = mats[0].shape[0]
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(attempts):
        H = np.zeros((d, d), dtype=complex)
        for word in _words(mats, 3):
            c = rng.standard_normal() + 1j * rng.standard_normal()
            H += c * _word_matrix(mats, word)
        evals, V = np.linalg.eig(H)
        cond = np.linalg.cond(V)
        if not np.isfinite(cond):
            continue
        clusters = _clusters(evals, 1e-7)
        unknowns = sum(len(c) ** 2 for c in clusters)
        if best is None or (unknowns, cond) < (best[0], best[1]):
            best = (unknowns, cond, V, clusters)
        if unknowns == d and cond < 1e6:
            break
    if best is None:
        return commutant_dimension_direct(mats, tol)
    _, _, V, clusters = best
    lu = scipy.linalg.lu_factor(V)
    N = [scipy.linalg.lu_solve(lu, m @ V) for m in mats]

    if all(len(c) == 1 for c in clusters):
        w = sum(np.abs(nk) ** 2 + np.abs(nk.T) ** 2 for nk in N)
        ia, ib = np.triu_indices(d, 1)
        inc = np.zeros((ia.size, d))
        rows = np.arange(ia.size)
        root = np.sqrt(w[ia, ib])
        inc[rows, ia] = root
        inc[rows, ib] = -root
        s = scipy.linalg.svd(inc, compute_uv=False)
        return _count_small(s, tol, d)

    cols = []
    for cl in clusters:
        for a in cl:
            for b in cl:
                blocks = []
                for nk in N:
                    c = np.zeros((d, d), dtype=complex)
                    c[a, :] += nk[b, :]
                    c[:, b] -= nk[:, a]
                    blocks.append(c.ravel())
                cols.append(np.concatenate(blocks))
    op = np.stack(cols, axis=1)
    s = scipy.linalg.svd(op, compute_uv=False)
    return _count_small(s, tol, op.shape[1])


def commutant_dimension(
    rep: RepMatrices, tol: float = 1e-8, cap: int = 200, direct_max: int = 12
) -> int:
    """Dimension of ``{X : X M_k = M_k X for all k}``.

    Equal to 1 exactly when the representation is irreducible over C.  Small
    representations use the full ``dim^2`` linear system; larger ones go
    through :func:`commutant_dimension_reduced`.
    """
    d = rep.dim
    if d > cap:
        raise CapExceededError(f"dim {d} exceeds the commutant cap {cap}")
    mats = _complex_mats(rep)
    if d <= direct_max:
        return commutant_dimension_direct(mats, tol)
    return commutant_dimension_reduced(mats, tol)


def direct_sum(*reps: RepMatrices) -> RepMatrices:
    """Block-diagonal sum; basis labels become ``(summand index, pattern)``."""
    keys = sorted(reps[0].generators)
    for r in reps[1:]:
        if sorted(r.generators) != keys:
            raise DimensionMismatchError("summands act on different algebras")
    gens = {k: scipy.linalg.block_diag(*[np.asarray(r[k], dtype=complex) for r in reps]) for k in keys}
    patterns = []
    for idx, r in enumerate(reps):
        patterns.extend((idx, p) for p in r.basis)
    return RepMatrices(gens, Basis(patterns), reps[0].spec)


# -- fingerprints -------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    dim: int
    eigenvalues: tuple[tuple[complex, ...], ...]
    traces: tuple[complex, ...]

    def distinct_from(self, other: "Fingerprint", tol: float = 1e-8) -> bool:
        """True when some invariant differs beyond ``tol`` (proves nonequivalence)."""
        if self.dim != other.dim or len(self.traces) != len(other.traces):
            return True
        if len(self.eigenvalues) != len(other.eigenvalues):
            return True
        for a, b in zip(self.eigenvalues, other.eigenvalues):
            if not np.allclose(a, b, rtol=tol, atol=tol):
                return True
        return not np.allclose(self.traces, other.traces, rtol=tol, atol=tol)

    def to_json(self) -> dict:
        pair = lambda z: [z.real, z.imag]  # noqa: E731
        return {
            "dim": self.dim,
            "eigenvalues": [[pair(z) for z in ev] for ev in self.eigenvalues],
            "traces": [pair(z) for z in self.traces],
        }


def _round(z: complex, digits: int = 8) -> complex:
    return complex(round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0)


def spectral_fingerprint(rep: RepMatrices) -> Fingerprint:
    """Similarity invariants: dimension, generator spectra, traces of short words.

    Eigenvalues are rounded to 1e-8 and sorted by (real, imag).  Traces run
    over every word of length 1 to 3 in the generators, in lexicographic order.
    """
    mats = _complex_mats(rep)
    spectra = []
    for m in mats:
        ev = [_round(z) for z in np.linalg.eigvals(m)]
        spectra.append(tuple(sorted(ev, key=lambda z: (z.real, z.imag))))
    traces = tuple(complex(np.trace(_word_matrix(mats, w))) for w in _words(mats, 3))
    return Fingerprint(rep.dim, tuple(spectra), traces)


# -- prime decomposition --------------------------------------------------------

@dataclass
class Block:
    odd_signs: dict[int, int]       # {2p+1: eps_{2p+1}}
    vectors: np.ndarray             # columns span the invariant subspace
    rep: RepMatrices

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass
class DecompositionReport:
    blocks: list[Block]
    invariance_residual: float
    total_dim: int
    tol: float = 1e-9
    matches: list[SignVector | None] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.invariance_residual < self.tol

    def to_json(self) -> dict:
        return {
            "total_dim": self.total_dim,
            "invariance_residual": self.invariance_residual,
            "tol": self.tol,
            "blocks": [
                {
                    "odd_signs": {str(k): v for k, v in b.odd_signs.items()},
                    "dim": b.dim,
                    "matched_signs": (
                        list(self.matches[i].values)
                        if i < len(self.matches) and self.matches[i] is not None
                        else None
                    ),
                }
                for i, b in enumerate(self.blocks)
            ],
        }


def split_vectors(basis: Basis, odd_signs: dict[int, int]) -> tuple[np.ndarray, list[GTPattern]]:
    """Orthonormal sign-split vectors for one choice of ``eps_{2p+1}``.

    For each tableau with ``m_{p,2p} > 0`` at every split row, the vector is
    ``sum over subsets S of prod_{p in S} (-eps_{2p+1}) |flip_S xi>``, where
    ``flip_S`` negates ``m_{p,2p}`` for ``p`` in ``S``; scaled to unit norm.
    """
    ps = sorted((k - 1) // 2 for k in odd_signs)
    positives = [xi for xi in basis if all(xi.row(2 * p)[p - 1] > 0 for p in ps)]
    norm = 1 / np.sqrt(2 ** len(ps))
    Q = np.zeros((len(basis), len(positives)))
    for col, xi in enumerate(positives):
        for subset in itertools.product((False, True), repeat=len(ps)):
            target, coeff = xi, 1.0
            for p, flip in zip(ps, subset):
                if flip:
                    target = target.replace(2 * p, p, -target.row(2 * p)[p - 1])
                    coeff *= -odd_signs[2 * p + 1]
            Q[basis.index(target), col] += coeff * norm
    return Q, positives


def decompose_prime(rep_prime: RepMatrices, tol: float = 1e-9) -> DecompositionReport:
    """Split the prime representation into its ``2^floor((n-1)/2)`` invariant blocks.

    Leakage of a block is ``||(1 - Q Q^T) M Q||_F / ||M||_F`` per generator;
    the report carries the maximum.  Raises :class:`LeakageError` above ``tol``.
    """
    spec = rep_prime.spec
    if spec is None or spec.kind is not Kind.PRIME:
        raise ValueError("decompose_prime needs a representation from build_prime")
    n = spec.weight.n
    odd_ks = [2 * p + 1 for p in range(1, (n - 1) // 2 + 1)]
    mats = _complex_mats(rep_prime)
    blocks, leak = [], 0.0
    for choice in itertools.product((1, -1), repeat=len(odd_ks)):
        odd = dict(zip(odd_ks, choice))
        Q, positives = split_vectors(rep_prime.basis, odd)
        P_out = np.eye(Q.shape[0]) - Q @ Q.T
        restricted = {}
        for k, m in zip(sorted(rep_prime.generators), mats):
            MQ = m @ Q
            nm = np.linalg.norm(m)
            if nm > 0:
                leak = max(leak, float(np.linalg.norm(P_out @ MQ) / nm))
            restricted[k] = Q.T @ MQ
        nc_basis = Basis(GTPattern(xi.rows, Flavor.NONCLASSICAL) for xi in positives)
        blocks.append(Block(odd, Q, RepMatrices(restricted, nc_basis, _block_spec(spec, odd))))
    report = DecompositionReport(blocks, leak, rep_prime.dim, tol)
    if leak >= tol:
        raise LeakageError(f"invariant-subspace leakage {leak:.3e} exceeds {tol:g}", report)
    return report


def _block_spec(spec: RepSpec, odd: dict[int, int]) -> RepSpec:
    """Nonclassical spec predicted for a block: even signs from ``spec``, odd from the split."""
    n = spec.weight.n
    values = tuple(odd.get(k, spec.signs.eps(k)) if k % 2 else spec.signs.eps(k) for k in range(2, n + 1))
    weight = HighestWeight(n, spec.weight.entries2, Flavor.NONCLASSICAL)
    return RepSpec(weight, spec.q, Kind.NONCLASSICAL, SignVector(values))


def _diagonal_similarity(M: list[np.ndarray], N: list[np.ndarray], tol: float):
    """Find ``s`` with ``s_i M[i,j] / s_j = N[i,j]`` by walking the nonzero pattern.

    Returns the scale vector, or ``None`` if the patterns disagree, or the
    string ``"disconnected"`` when the support graph does not reach every index.
    """
    d = M[0].shape[0]
    scale = max(max(np.abs(m).max() for m in M), max(np.abs(x).max() for x in N), 1e-300)
    thresh = 1e-12 * scale
    adj: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(d)}
    for idx, (m, x) in enumerate(zip(M, N)):
        nz_m = np.abs(m) > thresh
        nz_x = np.abs(x) > thresh
        if not np.array_equal(nz_m, nz_x):
            return None
        for i, j in zip(*np.nonzero(nz_m)):
            if i != j:
                adj[i].append((j, idx, 1))   # edge i -> j uses entry (i, j)
                adj[j].append((i, idx, 0))
    s = np.zeros(d, dtype=complex)
    s[0] = 1.0
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j, idx, forward in adj[i]:
            if j in seen:
                continue
            if forward:
                # s_i M[i,j] / s_j = N[i,j]
                s[j] = s[i] * M[idx][i, j] / N[idx][i, j]
            else:
                # s_j M[j,i] / s_i = N[j,i]
                s[j] = s[i] * N[idx][j, i] / M[idx][j, i]
            seen.add(j)
            queue.append(j)
    if len(seen) < d:
        return "disconnected"
    return s


def match_block_to_nonclassical(block: RepMatrices, candidate: RepMatrices, tol: float = 1e-8) -> bool:
    """Is there an invertible diagonal ``S`` with ``S M_k S^-1 = N_k`` for every ``k``?

    ``S`` is propagated along a spanning tree of the shared nonzero pattern and
    then checked on every entry.  A disconnected pattern falls back to
    fingerprint comparison.
    """
    if block.dim != candidate.dim or sorted(block.generators) != sorted(candidate.generators):
        return False
    M = _complex_mats(block)
    N = _complex_mats(candidate)
    s = _diagonal_similarity(M, N, tol)
    if s is None:
        return False
    if isinstance(s, str):
        return not spectral_fingerprint(block).distinct_from(spectral_fingerprint(candidate), tol)
    for m, x in zip(M, N):
        conj = (s[:, None] * m) / s[None, :]
        if np.linalg.norm(conj - x) >= tol * max(np.linalg.norm(x), 1e-300):
            return False
    return True


def identify_blocks(report: DecompositionReport, tol: float = 1e-8) -> list[list[SignVector]]:
    """For each block, every nonclassical sign vector whose representation it matches."""
    out = []
    for block in report.blocks:
        spec = block.rep.spec
        hits = []
        for signs in SignVector.all(spec.weight.n):
            cand = build_nonclassical(RepSpec(spec.weight, spec.q, Kind.NONCLASSICAL, signs))
            if match_block_to_nonclassical(block.rep, cand, tol):
                hits.append(signs)
        out.append(hits)
    report.matches = [h[0] if len(h) == 1 else None for h in out]
    return out
