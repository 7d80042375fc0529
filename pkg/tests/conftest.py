import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ousgeom.campaign import random_space
from ousgeom.exact import rank, solve

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


def rationals(lo=-3, hi=3, max_den=6):
    """Rationals in ``[lo, hi]`` with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    return st.integers(1, max_den).flatmap(
        lambda q: st.integers(math.ceil(lo * q), math.floor(hi * q)).map(lambda p: Fraction(p, q))
    )


def rational_vectors(dim, lo=-3, hi=3, max_den=6):
    return st.tuples(*[rationals(lo, hi, max_den) for _ in range(dim)])


space_seeds = st.integers(0, 10**6)


def seeded_space(seed, max_dim=4):
    rng = random.Random(seed)
    dim = rng.randint(2, max_dim)
    return random_space(rng.randrange(2**31), dim, rng.randint(dim + 1, 2 * dim + 2))


def brute_force_vertices(G, h, A=(), b=()):
    """Vertices of ``{G x >= h, A x = b}`` by trying every square active system."""
    d = len((list(G) + list(A))[0])
    rows = [(tuple(g), Fraction(c)) for g, c in zip(G, h)]
    eqs = [(tuple(a), Fraction(c)) for a, c in zip(A, b)]
    out = set()
    for combo in itertools.combinations(range(len(rows)), d - len(eqs)):
        system = eqs + [rows[i] for i in combo]
        x = solve([r for r, _ in system], [c for _, c in system])
        if x is None:
            continue
        if rank([r for r, _ in system]) < d:
            continue
        if all(sum(p * q for p, q in zip(g, x)) >= c for g, c in rows) and all(
            sum(p * q for p, q in zip(a, x)) == c for a, c in eqs
        ):
            out.add(tuple(x))
    return sorted(out)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
