import random

import pytest

from bkptau import TauSpec
from bkptau.ring import qify

# The verification suite: every strict lambda with max part <= 3 and padded
# length 2 or 4, each with all-zero constants and one pseudo-random rational
# constant set supported on indices <= 3 per part (fixed seed).
SUITE_SEED = 20260810
SUITE_LAMBDAS = [
    (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (3, 2, 1, 0),
]


def random_constants(rng, lam):
    return tuple(
        tuple(qify(f"{rng.randint(-3, 3)}/{rng.randint(1, 3)}") for _ in range(3))
        for _ in lam
    )


def suite_specs():
    rng = random.Random(SUITE_SEED)
    specs = []
    for lam in SUITE_LAMBDAS:
        specs.append(TauSpec(lam))
        specs.append(TauSpec(lam, random_constants(rng, lam)))
    return specs


@pytest.fixture(scope="session")
def suite():
    return suite_specs()


@pytest.fixture(scope="session")
def suite_taus(suite):
    """spec -> (tau_bkp, tau_kp_square), computed once per session."""
    from bkptau import tau_bkp, tau_kp_square

    return {spec: (tau_bkp(spec), tau_kp_square(spec)) for spec in suite}
