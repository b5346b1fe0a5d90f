"""Brute-force reference computations, independent of the library's fast paths."""

import itertools
from collections import Counter
from fractions import Fraction


def brute_lattice_count(partner, L):
    """Closed index walks on 1..L where paired steps are opposite and nonzero."""
    size = len(partner)
    count = 0
    for idx in itertools.product(range(1, L + 1), repeat=size):
        steps = [idx[m] - idx[(m + 1) % size] for m in range(size)]
        if all(steps[m] != 0 and steps[partner[m]] == -steps[m] for m in range(size)):
            count += 1
    return count


def brute_triples(N):
    return sum(
        1
        for x in range(1, N + 1)
        for y in range(1, N + 1)
        for z in range(1, N + 1)
        if 1 <= x + y - z <= N
    )


def brute_expected_moment(k, n, moments):
    """``E[M_k(A, n)]`` by summing the trace expansion over all index tuples.

    ``moments[a]`` is the a-th moment of the entry distribution; ``k`` even.
    """
    total = Fraction(0)
    for idx in itertools.product(range(n), repeat=k):
        diag = Counter(abs(idx[m] - idx[(m + 1) % k]) for m in range(k))
        if 0 in diag:
            continue
        term = Fraction(1)
        for mult in diag.values():
            term *= moments[mult]
        total += term
    return total / Fraction(n) ** (k // 2 + 1)


def brute_signed_count(partner, signs, L):
    """Index tuples where each pair's second step is ``sign`` times its first; zero steps allowed."""
    size = len(partner)
    firsts = sorted(m for m in range(size) if partner[m] > m)
    sign_of = {}
    for j, m in enumerate(firsts):
        sign_of[m] = sign_of[partner[m]] = signs[j]
    count = 0
    for idx in itertools.product(range(1, L + 1), repeat=size):
        steps = [idx[m] - idx[(m + 1) % size] for m in range(size)]
        if all(steps[partner[m]] == sign_of[m] * steps[m] for m in firsts):
            count += 1
    return count
