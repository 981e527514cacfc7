import pytest

from capstan.equilibrium import capacity, solve_equilibrium
from capstan.weights import RootWeight

# Weight suite spanning two to four zeros, symmetric and skewed exponents,
# single- and multi-interval supports, and a gap holding two zeros at once.
WEIGHT_SUITE = [
    RootWeight((0.0, 1.0), 0.0, (0.0, 1.0), (0.195, 0.195)),
    RootWeight((0.0, 1.0), 0.0, (0.0, 1.0), (1.0, 1.0)),
    RootWeight((0.0, 1.0), 0.0, (0.0, 1.0), (0.5, 2.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, 1.0), (3.0, 0.7)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, 0.0, 1.0), (1.0, 1.0, 1.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, 0.0, 1.0), (10.0, 1.0, 1.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, 0.3, 1.0), (0.8, 1.2, 0.6)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, 0.0, 1.0), (2.0, 0.5, 1.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, -1.0 / 3, 1.0 / 3, 1.0), (1.0, 1.0, 1.0, 1.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, -0.5, 0.5, 1.0), (0.5, 1.0, 1.0, 0.5)),
    RootWeight((0.0, 1.0), 0.0, (0.0, 0.3, 0.6, 1.0), (2.0, 1.0, 0.5, 1.0)),
    RootWeight((-1.0, 1.0), 0.0, (-1.0, -0.05, 0.05, 1.0), (1.0, 2.0, 2.0, 1.0)),
]


@pytest.fixture(scope="session")
def solved_suite():
    """Every suite weight solved once, with its capacity report."""
    out = []
    for w in WEIGHT_SUITE:
        m = solve_equilibrium(w)
        out.append((w, m, capacity(m)))
    return out


@pytest.fixture(scope="session")
def jacobi_weight():
    return RootWeight((0.0, 1.0), 0.0, (0.0, 1.0), (0.195, 0.195))


@pytest.fixture(scope="session")
def psi_table_million():
    from capstan.primes import build_psi

    return build_psi(10**6)
