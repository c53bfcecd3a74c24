"""Random integer-valued systems shared by the equivalence tests."""
import numpy as np

from mpqueue import ServiceProfile, SystemSpec


def integer_profile(rng, stages, K, first_server=0, high=None):
    # a mix of small ranges keeps ties (and zero service times) frequent
    high = high if high is not None else int(rng.choice([2, 4, 10, 100]))
    return ServiceProfile(rng.integers(0, high, size=(stages, K)).astype(np.float64), first_server)


def gg1(rng, K):
    return SystemSpec("gg1"), integer_profile(rng, 2, K)


def tandem(rng, n, K):
    return SystemSpec("tandem_infinite", n), integer_profile(rng, n + 1, K)


def finite(rng, n, K, buffers=None, max_buffer=3):
    if buffers is None:
        buffers = tuple(int(b) for b in rng.integers(0, max_buffer + 1, size=n - 1))
    return SystemSpec("tandem_finite", n, buffers), integer_profile(rng, n + 1, K)


def zero_buffer(rng, n, K):
    return finite(rng, n, K, buffers=(0,) * (n - 1))


def closed(rng, n, c, K):
    return SystemSpec("closed_tandem", n, c=c), integer_profile(rng, n, K, first_server=1)
