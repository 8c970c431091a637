"""Generator matrices ``T(I_{k,k-1})`` in Gel'fand-Tsetlin bases.

Four kinds are supported:

* ``classical``    -- q-deformations of the ordinary so_n irreducibles;
* ``nonclassical`` -- irreducibles without a q -> 1 limit, labelled by a sign
  vector and a half-integral weight;
* ``onedim``       -- the one-dimensional special case of the above;
* ``prime``        -- the reducible auxiliary representation on the classical
  basis of a half-integral weight, which splits into nonclassical blocks.

Generator ``I_{k,k-1}`` with odd ``k = 2p+1`` moves row ``2p`` and reads rows
``2p+1, 2p, 2p-1``; even ``k = 2p`` moves row ``2p-1``, reads rows
``2p, 2p-1, 2p-2`` and carries a diagonal part.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .patterns import (
    Basis,
    Flavor,
    GTPattern,
    HighestWeight,
    InvalidWeightError,
    LCoords,
    lcoords,
    require_valid,
    shift,
)
from .qnum import (
    QParam,
    ZeroDenominatorError,
    as_qparam,
    denom_even,
    half_inverse_gap,
    qnumber,
    qnumber_plus,
)

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class Kind(str, Enum):
    CLASSICAL = "classical"
    NONCLASSICAL = "nonclassical"
    ONEDIM = "onedim"
    PRIME = "prime"

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, cls):
            return value
        aliases = {"one-dim": "onedim", "one_dim": "onedim", "t-prime": "prime"}
        return cls(aliases.get(str(value), str(value)))


class CoefficientError(ArithmeticError):
    """A matrix-element formula was evaluated outside its domain."""


@dataclass(frozen=True)
class SignVector:
    """``(eps_2, ..., eps_n)``, each +1 or -1."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v not in (1, -1) for v in vals):
            raise ValueError(f"sign components must be +1 or -1, got {self.values}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values) + 1

    def eps(self, k: int) -> int:
        """``eps_k`` for ``2 <= k <= n``."""
        if not 2 <= k <= self.n:
            raise IndexError(f"eps_{k} is not defined for n = {self.n}")
        return self.values[k - 2]

    @classmethod
    def all(cls, n: int) -> list["SignVector"]:
        import itertools

        return [cls(v) for v in itertools.product((1, -1), repeat=n - 1)]

    def __str__(self) -> str:
        return "(" + ",".join("+" if v > 0 else "-" for v in self.values) + ")"


@dataclass(frozen=True)
class RepSpec:
    weight: HighestWeight
    q: QParam
    kind: Kind = Kind.CLASSICAL
    signs: SignVector | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "q", as_qparam(self.q))
        if self.signs is not None and not isinstance(self.signs, SignVector):
            object.__setattr__(self, "signs", SignVector(tuple(self.signs)))
        w, kind = self.weight, self.kind
        if kind is Kind.CLASSICAL:
            if self.signs is not None:
                raise ValueError("classical representations take no sign vector")
            if w.flavor is not Flavor.CLASSICAL:
                raise ValueError("classical kind needs a classical-flavor weight")
        else:
            if self.signs is None:
                raise ValueError(f"{kind.value} representations need a sign vector")
            if self.signs.n != w.n:
                raise ValueError(f"sign vector has {len(self.signs.values)} components, need {w.n - 1}")
        if kind is Kind.NONCLASSICAL and w.flavor is not Flavor.NONCLASSICAL:
            raise ValueError("nonclassical kind needs a nonclassical-flavor weight")
        if kind is Kind.ONEDIM and w.entries2 != (1,) * (w.n // 2):
            raise InvalidWeightError("one-dimensional representations have weight (1/2, ..., 1/2)")
        if kind is Kind.PRIME:
            if w.flavor is not Flavor.CLASSICAL:
                raise ValueError("prime kind is built on the classical-flavor basis")
            if not w.half_integral or w.entries2[-1] < 1:
                raise InvalidWeightError(
                    "prime kind needs half-integral entries with last entry >= 1/2"
                )
        require_valid(w)


@dataclass
class RepMatrices:
    """Dense generator matrices keyed by ``k`` (for ``I_{k,k-1}``)."""

    generators: dict[int, np.ndarray]
    basis: Basis
    spec: RepSpec | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return max(self.generators) if self.generators else 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.generators[k]

    def ordered(self) -> list[np.ndarray]:
        return [self.generators[k] for k in sorted(self.generators)]


# -- coefficients -----------------------------------------------------------

def _as_l(x) -> LCoords:
    return x if isinstance(x, LCoords) else lcoords(x)


def _l(L: LCoords, j: int, k: int) -> Fraction:
    return Fraction(L.l2(j, k), 2)


def _root_of_ratio(num, den, what: str):
    if num == 0:
        return 0.0 * num
    if den == 0:
        raise ZeroDenominatorError(f"{what}: vanishing denominator on an admissible numerator")
    ratio = num / den
    if ratio < 0:
        scale = abs(num) / abs(den)
        if abs(ratio) > 1e-12 * max(scale, 1.0):
            raise CoefficientError(f"{what}: negative radicand {ratio}")
        return 0.0 * num
    return ratio ** 0.5


def coeff_A(pattern, p: int, j: int, q) -> float:
    """``A^j_{2p}``: raising coefficient of ``m_{j,2p}``.

    Reads rows ``2p+1`` (p entries), ``2p`` and ``2p-1`` (p-1 entries).
    Returns 0 whenever a numerator factor vanishes.
    """
    q = as_qparam(q)
    L = _as_l(pattern)
    lj = _l(L, j, 2 * p)
    num = q.number(1)
    for i in range(1, p + 1):
        li = _l(L, i, 2 * p + 1)
        num *= qnumber(li + lj, q) * qnumber(li - lj - 1, q)
    if p > 1:
        for i in range(1, p):
            li = _l(L, i, 2 * p - 1)
            num *= qnumber(li + lj, q) * qnumber(li - lj - 1, q)
    if num == 0:
        return num
    den = q.number(1)
    for i in range(1, p + 1):
        if i == j:
            continue
        li = _l(L, i, 2 * p)
        den *= (
            qnumber(li + lj, q) * qnumber(li - lj, q)
            * qnumber(li + lj + 1, q) * qnumber(li - lj - 1, q)
        )
    return _root_of_ratio(num, den, f"A^{j}_{2 * p}")


def coeff_B(pattern, p: int, j: int, q) -> float:
    """``B^j_{2p-1}`` for ``1 <= j <= p-1``; rows ``2p``, ``2p-1``, ``2p-2``."""
    if not 1 <= j <= p - 1:
        raise ValueError(f"B^j_{2 * p - 1} needs 1 <= j <= {p - 1}")
    q = as_qparam(q)
    L = _as_l(pattern)
    lj = _l(L, j, 2 * p - 1)
    num = q.number(1)
    for i in range(1, p + 1):
        li = _l(L, i, 2 * p)
        num *= qnumber(li + lj, q) * qnumber(li - lj, q)
    if 2 * p - 2 >= 2:
        for i in range(1, p):
            li = _l(L, i, 2 * p - 2)
            num *= qnumber(li + lj, q) * qnumber(li - lj, q)
    if num == 0:
        return num
    den = q.number(1)
    for i in range(1, p):
        if i == j:
            continue
        li = _l(L, i, 2 * p - 1)
        den *= (
            qnumber(li + lj, q) * qnumber(li - lj, q)
            * qnumber(li + lj - 1, q) * qnumber(li - lj - 1, q)
        )
    return _root_of_ratio(num, den, f"B^{j}_{2 * p - 1}")


def _c_like(pattern, p: int, q, bracket):
    q = as_qparam(q)
    L = _as_l(pattern)
    num = q.number(1)
    for s in range(1, p + 1):
        num *= bracket(_l(L, s, 2 * p), q)
    if 2 * p - 2 >= 2:
        for s in range(1, p):
            num *= bracket(_l(L, s, 2 * p - 2), q)
    if num == 0:
        return num
    den = q.number(1)
    for s in range(1, p):
        ls = _l(L, s, 2 * p - 1)
        den *= bracket(ls, q) * bracket(ls - 1, q)
    if den == 0:
        raise ZeroDenominatorError(f"C_{2 * p - 1}: vanishing denominator")
    return num / den


def coeff_C(pattern, p: int, q) -> float:
    """Diagonal coefficient ``C_{2p-1}`` of the classical ``I_{2p,2p-1}``.

    Vanishes identically when ``l_{p,2p} = 0``.
    """
    return _c_like(pattern, p, q, qnumber)


def coeff_Chat(pattern, p: int, q) -> float:
    """``C_{2p-1}`` with every q-number replaced by ``[.]_+``."""
    return _c_like(pattern, p, q, qnumber_plus)


def coeff_D(pattern, p: int, q) -> float:
    """``D_{2p}``: weight of the diagonal term at ``m_{p,2p} = 1/2``."""
    q = as_qparam(q)
    L = _as_l(pattern)
    num = q.number(1)
    for i in range(1, p + 1):
        num *= qnumber(_l(L, i, 2 * p + 1) - HALF, q)
    if p > 1:
        for i in range(1, p):
            num *= qnumber(_l(L, i, 2 * p - 1) - HALF, q)
    den = q.number(1)
    for i in range(1, p):
        li = _l(L, i, 2 * p)
        den *= qnumber(li + HALF, q) * qnumber(li - HALF, q)
    if den == 0:
        raise ZeroDenominatorError(f"D_{2 * p}: vanishing denominator")
    return num / den


# -- builders ---------------------------------------------------------------

@dataclass(frozen=True)
class _Rules:
    even_flavor: str          # denominator of I_{2p+1,2p}: "classical" (+) or "nonclassical" (-)
    odd_bracket: object       # q-number used in the I_{2p,2p-1} denominators
    diag_kind: str            # "iC" or "epsChat"
    delta_term: bool          # m_{p,2p} = 1/2 diagonal term of I_{2p+1,2p}


_RULES = {
    Kind.CLASSICAL: _Rules("classical", qnumber, "iC", False),
    Kind.NONCLASSICAL: _Rules("nonclassical", qnumber_plus, "epsChat", True),
    Kind.PRIME: _Rules("nonclassical", qnumber_plus, "epsChat", False),
}


def _column_odd_k(xi: GTPattern, L: LCoords, p: int, q: QParam, rules: _Rules, signs):
    """Entries of ``T(I_{2p+1,2p}) |xi>`` as (target, value) pairs."""
    k = 2 * p
    out = []
    at_half = xi.row(k)[p - 1] == 1
    for j in range(1, p + 1):
        lj = Fraction(L.l2(j, k), 2)
        den = denom_even(lj, q, rules.even_flavor)
        up = shift(xi, k, j, +1)
        if up is not None:
            out.append((up, coeff_A(L, p, j, q) / den))
        down = shift(xi, k, j, -1)
        if down is not None:
            if rules.delta_term and j == p and at_half:
                raise AssertionError("lowering m_{p,2p} = 1/2 must be excluded")
            out.append((down, -coeff_A(down, p, j, q) / den))
    if rules.delta_term and at_half:
        coeff = signs.eps(2 * p + 1) * half_inverse_gap(q) * coeff_D(L, p, q)
        out.append((xi, coeff))
    return out


def _column_even_k(xi: GTPattern, L: LCoords, p: int, q: QParam, rules: _Rules, signs):
    """Entries of ``T(I_{2p,2p-1}) |xi>``."""
    k = 2 * p - 1
    out = []
    br = rules.odd_bracket
    for j in range(1, p):
        lj = Fraction(L.l2(j, k), 2)
        up = shift(xi, k, j, +1)
        if up is not None:
            out.append((up, coeff_B(L, p, j, q) / (qnumber(2 * lj - 1, q) * br(lj, q))))
        down = shift(xi, k, j, -1)
        if down is not None:
            out.append((down, -coeff_B(down, p, j, q) / (qnumber(2 * lj - 1, q) * br(lj - 1, q))))
    if rules.diag_kind == "iC":
        out.append((xi, 1j * coeff_C(L, p, q)))
    else:
        out.append((xi, signs.eps(2 * p) * coeff_Chat(L, p, q)))
    return out


def _build(spec: RepSpec, basis: Basis, rules: _Rules) -> RepMatrices:
    q = spec.q
    n = spec.weight.n
    dim = len(basis)
    dtype = complex if q.dps is None else object
    gens = {k: np.zeros((dim, dim), dtype=dtype) for k in range(2, n + 1)}
    for col, xi in enumerate(basis):
        L = lcoords(xi)
        for k in range(2, n + 1):
            if k % 2:
                entries = _column_odd_k(xi, L, (k - 1) // 2, q, rules, spec.signs)
            else:
                entries = _column_even_k(xi, L, k // 2, q, rules, spec.signs)
            M = gens[k]
            for target, value in entries:
                M[basis.index(target), col] += value
    return RepMatrices(gens, basis, spec)


def build_classical(spec: RepSpec) -> RepMatrices:
    if spec.kind is not Kind.CLASSICAL:
        raise ValueError("build_classical needs kind=classical")
    return _build(spec, Basis.of(spec.weight), _RULES[Kind.CLASSICAL])


def build_nonclassical(spec: RepSpec) -> RepMatrices:
    if spec.kind is not Kind.NONCLASSICAL:
        raise ValueError("build_nonclassical needs kind=nonclassical")
    return _build(spec, Basis.of(spec.weight), _RULES[Kind.NONCLASSICAL])


def build_onedim(spec: RepSpec) -> RepMatrices:
    if spec.kind is not Kind.ONEDIM:
        raise ValueError("build_onedim needs kind=onedim")
    n = spec.weight.n
    w = HighestWeight(n, spec.weight.entries2, Flavor.NONCLASSICAL)
    basis = Basis.of(w)
    scale = half_inverse_gap(spec.q)
    dtype = complex if spec.q.dps is None else object
    gens = {
        k: np.array([[spec.signs.eps(k) * scale]], dtype=dtype) for k in range(2, n + 1)
    }
    return RepMatrices(gens, basis, spec)


def build_prime(spec: RepSpec) -> RepMatrices:
    """Auxiliary reducible representation on the classical basis.

    Only the even components ``eps_2, eps_4, ...`` of the sign vector enter;
    odd components are ignored and noted on the result.
    """
    if spec.kind is not Kind.PRIME:
        raise ValueError("build_prime needs kind=prime")
    rep = _build(spec, Basis.of(spec.weight), _RULES[Kind.PRIME])
    odd = [spec.signs.eps(k) for k in range(3, spec.weight.n + 1, 2)]
    if any(v != 1 for v in odd):
        msg = "odd signs ignored"
        log.warning("%s for prime kind: %s", msg, spec.signs)
        rep.notes.append(msg)
    return rep


def build(spec: RepSpec) -> RepMatrices:
    """Dispatch on ``spec.kind``."""
    return {
        Kind.CLASSICAL: build_classical,
        Kind.NONCLASSICAL: build_nonclassical,
        Kind.ONEDIM: build_onedim,
        Kind.PRIME: build_prime,
    }[spec.kind](spec)
