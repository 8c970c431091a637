"""Gel'fand-Tsetlin tableaux for classical and nonclassical representations.

Entries are stored doubled (``2*m``) so half-integers stay exact.  A tableau
for ``so_n`` holds rows ``m_n, m_{n-1}, ..., m_2``; row ``k`` has ``k // 2``
entries.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Flavor(str, Enum):
    CLASSICAL = "classical"
    NONCLASSICAL = "nonclassical"


class InvalidWeightError(ValueError):
    pass


class PatternNotFoundError(LookupError):
    pass


def parse_half_integer(token) -> int:
    """Return ``2*x`` for a token such as ``"3/2"``, ``"1.5"``, ``2`` or ``Fraction(1, 2)``."""
    if isinstance(token, str):
        token = token.strip()
        if not token:
            raise ValueError("empty weight entry")
        value = Fraction(token)
    else:
        value = Fraction(token)
    doubled = 2 * value
    if doubled.denominator != 1:
        raise ValueError(f"{token!r} is not an integer or half-integer")
    return int(doubled)


def format_half_integer(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled}/2"


@dataclass(frozen=True)
class HighestWeight:
    """Top row ``m_n`` of a tableau, doubled, plus the flavor tag."""

    n: int
    entries2: tuple[int, ...]
    flavor: Flavor = Flavor.CLASSICAL

    def __post_init__(self):
        if self.n < 3:
            raise InvalidWeightError(f"n must be at least 3, got {self.n}")
        object.__setattr__(self, "entries2", tuple(int(e) for e in self.entries2))
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        if len(self.entries2) != self.n // 2:
            raise InvalidWeightError(
                f"so_{self.n} weight needs {self.n // 2} entries, got {len(self.entries2)}"
            )

    @classmethod
    def from_values(cls, n: int, values: Iterable, flavor=Flavor.CLASSICAL) -> "HighestWeight":
        return cls(n, tuple(parse_half_integer(v) for v in values), Flavor(flavor))

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(e, 2) for e in self.entries2)

    @property
    def half_integral(self) -> bool:
        return bool(self.entries2) and self.entries2[0] % 2 == 1

    def labels(self) -> list[str]:
        return [format_half_integer(e) for e in self.entries2]

    def __str__(self) -> str:
        return f"({', '.join(self.labels())})"


def validate_weight(w: HighestWeight) -> bool:
    """Dominance and parity conditions for the weight's flavor."""
    e = w.entries2
    parities = {x % 2 for x in e}
    if len(parities) > 1:
        return False
    if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
        return False
    if w.flavor is Flavor.NONCLASSICAL:
        return parities == {1} and e[-1] >= 1
    if w.n % 2 == 1:
        return e[-1] >= 0
    # even n: m_{p-1} >= |m_p|, the last entry may be negative
    return len(e) < 2 or e[-2] >= abs(e[-1])


def require_valid(w: HighestWeight) -> HighestWeight:
    if not validate_weight(w):
        raise InvalidWeightError(f"{w.flavor.value} weight {w} is not admissible for so_{w.n}")
    return w


def _lower_bounds(upper: Sequence[int], k: int, flavor: Flavor) -> list[tuple[int, int]]:
    """Per-entry (low, high) doubled bounds of row ``k-1`` given row ``k``."""
    bounds = []
    if k % 2 == 1:
        p = (k - 1) // 2
        for j in range(p):
            hi = upper[j]
            if j + 1 < p:
                lo = upper[j + 1]
            elif flavor is Flavor.CLASSICAL:
                lo = -upper[j]
            else:
                lo = 1
            bounds.append((lo, hi))
    else:
        p = k // 2
        for j in range(p - 1):
            hi = upper[j]
            if j + 1 < p - 1:
                lo = upper[j + 1]
            elif flavor is Flavor.CLASSICAL:
                lo = abs(upper[p - 1])
            else:
                lo = upper[p - 1]
            bounds.append((lo, hi))
    return bounds


def _row_choices(upper: Sequence[int], k: int, flavor: Flavor):
    ranges = [range(lo, hi + 1, 2) for lo, hi in _lower_bounds(upper, k, flavor)]
    return itertools.product(*ranges)


def rows_interlace(upper: Sequence[int], lower: Sequence[int], k: int, flavor: Flavor) -> bool:
    """Betweenness of row ``k`` (upper) over row ``k-1`` (lower)."""
    bounds = _lower_bounds(upper, k, flavor)
    if len(bounds) != len(lower):
        return False
    return all(
        lo <= x <= hi and (x - hi) % 2 == 0 for x, (lo, hi) in zip(lower, bounds)
    )


@dataclass(frozen=True)
class GTPattern:
    """A full tableau; ``rows[0]`` is the top row ``m_n``, ``rows[-1]`` is ``m_2``."""

    rows: tuple[tuple[int, ...], ...]
    flavor: Flavor = Flavor.CLASSICAL

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    def row(self, k: int) -> tuple[int, ...]:
        """Doubled entries of row ``k`` (``2 <= k <= n``)."""
        return self.rows[self.n - k]

    def m(self, j: int, k: int) -> Fraction:
        """Entry ``m_{j,k}`` (1-based ``j``)."""
        return Fraction(self.row(k)[j - 1], 2)

    @property
    def weight(self) -> HighestWeight:
        return HighestWeight(self.n, self.rows[0], self.flavor)

    def is_valid(self) -> bool:
        if not validate_weight(self.weight):
            return False
        return all(
            rows_interlace(self.row(k), self.row(k - 1), k, self.flavor)
            for k in range(self.n, 2, -1)
        )

    def replace(self, k: int, j: int, value2: int) -> "GTPattern":
        rows = list(self.rows)
        r = list(rows[self.n - k])
        r[j - 1] = value2
        rows[self.n - k] = tuple(r)
        return GTPattern(tuple(rows), self.flavor)

    def to_json(self) -> dict:
        return {"flavor": self.flavor.value, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "GTPattern":
        if isinstance(data, dict):
            return cls(tuple(tuple(int(x) for x in r) for r in data["rows"]), Flavor(data["flavor"]))
        return cls(tuple(tuple(int(x) for x in r) for r in data))

    def __str__(self) -> str:
        return " | ".join(" ".join(format_half_integer(x) for x in r) for r in self.rows)


def enumerate_patterns(w: HighestWeight) -> list[GTPattern]:
    """All tableaux with top row ``w``, in canonical (lexicographic) order.

    Rows are chosen top-down; ``itertools.product`` over ascending ranges keeps
    the concatenation ``m_{n-1}, ..., m_2`` lexicographically sorted.
    """
    require_valid(w)
    out: list[GTPattern] = []

    def extend(rows: list[tuple[int, ...]], k: int):
        if k == 2:
            out.append(GTPattern(tuple(rows), w.flavor))
            return
        for lower in _row_choices(rows[-1], k, w.flavor):
            rows.append(tuple(lower))
            extend(rows, k - 1)
            rows.pop()

    extend([w.entries2], w.n)
    return out


class Basis(Sequence):
    """Ordered tableau list with O(1) position lookup."""

    def __init__(self, patterns: Iterable[GTPattern]):
        self.patterns = tuple(patterns)
        self._index = {p: i for i, p in enumerate(self.patterns)}
        if len(self._index) != len(self.patterns):
            raise ValueError("duplicate patterns in basis")

    @classmethod
    def of(cls, w: HighestWeight) -> "Basis":
        return cls(enumerate_patterns(w))

    def __getitem__(self, i):
        return self.patterns[i]

    def __len__(self) -> int:
        return len(self.patterns)

    def __contains__(self, p) -> bool:
        return p in self._index

    def index(self, p, start=0, stop=None) -> int:
        try:
            return self._index[p]
        except (KeyError, TypeError):
            raise PatternNotFoundError(f"pattern {p} is not in this basis") from None


def index_of(p: GTPattern | None, basis: Sequence[GTPattern]) -> int:
    if p is None:
        raise PatternNotFoundError("invalid pattern")
    if isinstance(basis, Basis):
        return basis.index(p)
    try:
        return list(basis).index(p)
    except ValueError:
        raise PatternNotFoundError(f"pattern {p} is not in this basis") from None


def shift(p: GTPattern, k: int, j: int, delta: int, check: bool = True) -> GTPattern | None:
    """``(xi)^{+-j}_k``: add ``delta`` (+1 or -1) to ``m_{j,k}``.

    Returns ``None`` when the result breaks the flavor's betweenness
    conditions.  ``check=False`` skips validation (used to evaluate formulas on
    out-of-range neighbours).
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if not 2 <= k < p.n:
        raise ValueError(f"row {k} cannot be shifted in a so_{p.n} tableau")
    if not 1 <= j <= k // 2:
        raise ValueError(f"row {k} has no entry {j}")
    out = p.replace(k, j, p.row(k)[j - 1] + 2 * delta)
    if not check:
        return out
    if not rows_interlace(out.row(k + 1), out.row(k), k + 1, p.flavor):
        return None
    if k > 2 and not rows_interlace(out.row(k), out.row(k - 1), k, p.flavor):
        return None
    return out


@dataclass(frozen=True)
class LCoords:
    """Doubled l-coordinates, keyed by row number."""

    rows2: dict

    def l2(self, j: int, k: int) -> int:
        return self.rows2[k][j - 1]

    def l(self, j: int, k: int) -> Fraction:
        return Fraction(self.rows2[k][j - 1], 2)

    def row(self, k: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.rows2[k])


def lrow2(row2: Sequence[int], k: int) -> tuple[int, ...]:
    """Doubled l-coordinates of one row ``k``."""
    p = k // 2
    offset = 1 if k % 2 else 0
    return tuple(x + 2 * (p - j + offset) for j, x in enumerate(row2, start=1))


def lcoords(p: GTPattern) -> LCoords:
    return LCoords({k: lrow2(p.row(k), k) for k in range(2, p.n + 1)})
