"""Lattice-point counts behind the even moments.

For a pairing of the 2k edges of a closed index walk ``i_1 -> i_2 -> ... ->
i_{2k} -> i_1`` on ``{1..L}``, each pair's first edge takes a step ``d``
(``i_{m+1} = i_m - d``) and its second edge steps back by ``+d``.  The number
of such walks grows like ``c L^{k+1}``; ``c`` is the pairing's contribution to
the limiting moment.

Walks are counted layer by layer.  The state after each edge is the current
index plus the steps still waiting to be undone; states that agree on both
are merged with a multiplicity, which keeps the work far below ``L^{k+1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .pairings import Pairing, enumerate_pairings


def _reduce(keys: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(keys, kind="stable")
    keys, weights = keys[order], weights[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    return keys[starts], np.add.reduceat(weights, starts)


def lattice_count(pairing: Pairing, L: int) -> int:
    """Closed walks on ``{1..L}`` compatible with ``pairing``, all steps nonzero.

    Paired edges carry opposite steps.  Walks where two different pairs happen
    to share ``|d|`` are included.
    """
    if L < 1:
        raise ValueError("L must be positive")
    if L == 1:
        return 0
    partner = pairing.partner
    radix = 2 * L - 1  # step d stored as digit d + L - 1
    if L * radix ** pairing.k >= 2**62:
        raise ValueError(f"L={L} too large for k={pairing.k} state encoding")
    steps = np.concatenate((np.arange(-(L - 1), 0), np.arange(1, L))).astype(np.int64)

    # key = pending_digits * L + (index - 1); most recently opened step is the lowest digit
    keys = np.arange(L, dtype=np.int64)
    weights = np.ones(L, dtype=np.int64)
    pending: list[int] = []
    for m, n in enumerate(partner):
        pos, rest = keys % L, keys // L
        if n > m:
            new_pos = pos[:, None] - steps[None, :]
            ok = (new_pos >= 0) & (new_pos < L)
            new_rest = rest[:, None] * radix + (steps + L - 1)[None, :]
            keys = (new_rest * L + new_pos)[ok]
            weights = np.broadcast_to(weights[:, None], ok.shape)[ok]
            pending.append(m)
        else:
            j = pending.index(n)
            place = radix ** (len(pending) - 1 - j)
            digit = (rest // place) % radix
            new_pos = pos + digit - (L - 1)
            ok = (new_pos >= 0) & (new_pos < L)
            new_rest = (rest // (place * radix)) * place + rest % place
            keys = (new_rest * L + new_pos)[ok]
            weights = weights[ok]
            pending.pop(j)
        if keys.size == 0:
            return 0
        keys, weights = _reduce(keys, weights)
    return int(weights.sum())


def count_obstruction_triples(N: int) -> int:
    """``#{x, y, z in 1..N : 1 <= x + y - z <= N}`` by summing over ``S = x + y``."""
    if N < 1:
        raise ValueError("N must be positive")
    total = 0
    for s in range(2, 2 * N + 1):
        ways = s - 1 if s <= N + 1 else 2 * N - s + 1
        # z ranges over max(1, s-N) .. min(N, s-1), which has the same size
        total += ways * ways
    return total


@dataclass(frozen=True)
class AuditRow:
    pairing: Pairing
    signs: tuple[int, ...]
    L: int
    total: int
    nonzero: int
    distinct: int

    @property
    def all_negative(self) -> bool:
        return all(s == -1 for s in self.signs)

    @property
    def ratio(self) -> float:
        return self.total / self.L ** (self.pairing.k + 1)

    @property
    def nonzero_ratio(self) -> float:
        return self.nonzero / self.L ** (self.pairing.k + 1)

    def to_dict(self) -> dict:
        return {
            "partner": list(self.pairing.partner),
            "signs": list(self.signs),
            "L": self.L,
            "total": self.total,
            "nonzero": self.nonzero,
            "distinct": self.distinct,
            "ratio": self.ratio,
        }


def _signed_walks(pairing: Pairing, signs, L: int) -> np.ndarray:
    """Step values (one column per pair) of every closed walk obeying ``signs``.

    Pair ``j`` with first step ``d`` repeats it as ``signs[j] * d`` on its
    second edge.  Zero steps are allowed here.
    """
    partner = pairing.partner
    steps = np.arange(-(L - 1), L, dtype=np.int64)
    start = np.arange(1, L + 1, dtype=np.int64)
    pos = start.copy()
    d = np.empty((L, 0), dtype=np.int64)
    slot = {}
    for m, n in enumerate(partner):
        if n > m:
            slot[m] = d.shape[1]
            new_pos = (pos[:, None] - steps[None, :]).ravel()
            rows = np.repeat(np.arange(pos.size), steps.size)
            ok = (new_pos >= 1) & (new_pos <= L)
            rows = rows[ok]
            d = np.column_stack((d[rows], np.tile(steps, pos.size)[ok]))
            start, pos = start[rows], new_pos[ok]
        else:
            j = slot[n]
            pos = pos - signs[j] * d[:, j]
            ok = (pos >= 1) & (pos <= L)
            d, start, pos = d[ok], start[ok], pos[ok]
    return d[pos == start]


def sign_audit(k: int, L: int) -> list[AuditRow]:
    """Exhaustive walk counts for every pairing and every sign vector.

    ``total`` counts all index tuples satisfying the sign relations,
    ``nonzero`` those with no zero step, ``distinct`` those whose pairs also
    take pairwise distinct ``|d|``.
    """
    if not 1 <= k <= 3:
        raise ValueError("sign audit supports k <= 3")
    if not 1 <= L <= 30:
        raise ValueError("sign audit supports L <= 30")
    rows = []
    for pairing in enumerate_pairings(k):
        for signs in itertools.product((-1, 1), repeat=k):
            d = _signed_walks(pairing, signs, L)
            nonzero = np.all(d != 0, axis=1)
            a = np.sort(np.abs(d), axis=1)
            distinct = nonzero & np.all(a[:, 1:] != a[:, :-1], axis=1)
            rows.append(AuditRow(pairing, signs, L, int(d.shape[0]), int(nonzero.sum()), int(distinct.sum())))
    return rows
