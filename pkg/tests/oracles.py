"""Independent oracles used to freeze expected values in the tests.

These deliberately avoid the code paths they check: seed counting keys on
expansion strings instead of g-vectors, root enumeration uses the Tits form
on a box instead of reflection closure, and type-A Hom dimensions come from
the classical interval criterion.
"""
from __future__ import annotations

from collections import deque

from clustermod import Seed


def oracle_seed_count(seed0: Seed, cap: int = 10**5) -> int:
    """BFS of unlabeled seeds keyed by the sorted cluster-expansion strings."""

    def key(seed):
        return tuple(sorted(str(p) for p in seed.cluster))

    seen = {key(seed0)}
    queue = deque([seed0])
    while queue:
        seed = queue.popleft()
        for v in seed.ctx.mutables:
            nxt = seed.mutate(v)
            k = key(nxt)
            if k not in seen:
                if len(seen) >= cap:
                    raise RuntimeError("oracle cap exceeded")
                seen.add(k)
                queue.append(nxt)
    return len(seen)


def oracle_positive_roots(cartan, box: int = 6) -> set[tuple[int, ...]]:
    """Nonzero nonnegative vectors of Tits form 1 inside a bounding box."""
    n = cartan.rank
    out = set()

    def tits(v):
        val = sum(x * x for x in v)
        for a, b in cartan.edges:
            val -= v[a - 1] * v[b - 1]
        return val

    def rec(prefix):
        if len(prefix) == n:
            if any(prefix) and tits(prefix) == 1:
                out.add(tuple(prefix))
            return
        for x in range(box + 1):
            rec(prefix + [x])

    rec([])
    return out


def oracle_hom_dim_typeA_linear(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Hom dimension between interval modules of the linear A_n quiver 1->2->...->n.

    For intervals [a1,a2] and [b1,b2] there is a nonzero morphism exactly when
    b1 <= a1 <= b2 <= a2, and then the space is one-dimensional.
    """

    def interval(d):
        ones = [i for i, x in enumerate(d) if x == 1]
        assert all(x in (0, 1) for x in d) and ones == list(range(ones[0], ones[-1] + 1))
        return ones[0], ones[-1]

    a1, a2 = interval(a)
    b1, b2 = interval(b)
    return 1 if b1 <= a1 <= b2 <= a2 else 0
