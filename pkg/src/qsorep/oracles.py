"""Brute-force reference enumeration of tableaux.

Deliberately shares no code with :mod:`qsorep.patterns` beyond the data
types: every candidate in the bounding box is tested against the interlacing
chains written out in full.
"""

from __future__ import annotations

import itertools

from .patterns import Flavor, GTPattern, HighestWeight

HALF2 = 1  # 1/2, doubled


def _nonincreasing(chain) -> bool:
    return all(a >= b for a, b in zip(chain, chain[1:]))


def _odd_over_even(top, low, flavor) -> bool:
    # m_{1,2p+1} >= m_{1,2p} >= m_{2,2p+1} >= ... >= m_{p,2p+1} >= m_{p,2p} >= floor
    chain = [x for pair in zip(top, low) for x in pair]
    floor = -top[-1] if flavor is Flavor.CLASSICAL else HALF2
    return _nonincreasing(chain) and low[-1] >= floor


def _even_over_odd(top, low, flavor) -> bool:
    # m_{1,2p} >= m_{1,2p-1} >= ... >= m_{p-1,2p} >= m_{p-1,2p-1} >= last
    if not low:
        return True
    chain = [x for pair in zip(top[:-1], low) for x in pair]
    last = abs(top[-1]) if flavor is Flavor.CLASSICAL else top[-1]
    return _nonincreasing(chain) and low[-1] >= last


def satisfies_betweenness(rows, n: int, flavor: Flavor) -> bool:
    """``rows[0]`` is ``m_n`` down to ``rows[-1] = m_2``, all entries doubled."""
    for idx in range(len(rows) - 1):
        k = n - idx
        top, low = rows[idx], rows[idx + 1]
        ok = _odd_over_even(top, low, flavor) if k % 2 else _even_over_odd(top, low, flavor)
        if not ok:
            return False
    return True


def brute_force_patterns(w: HighestWeight) -> list[GTPattern]:
    """Every tableau over ``w`` found by exhaustive search of the candidate box.

    Lower-row entries range over ``[-M, M]`` with ``M = max |m_{j,n}|`` and the
    weight's parity.  Result is sorted in canonical order.
    """
    top = list(w.entries2)
    bound = max(abs(x) for x in top)
    values = list(range(-bound, bound + 1, 2))
    sizes = [k // 2 for k in range(w.n - 1, 1, -1)]
    found = []
    for flat in itertools.product(values, repeat=sum(sizes)):
        rows, pos = [top], 0
        for s in sizes:
            rows.append(list(flat[pos:pos + s]))
            pos += s
        if satisfies_betweenness(rows, w.n, w.flavor):
            found.append(GTPattern(tuple(tuple(r) for r in rows), w.flavor))
    found.sort(key=lambda c: tuple(itertools.chain.from_iterable(c.rows[1:])))
    return found

