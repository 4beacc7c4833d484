import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cliffordweil.codes import enumerate_bruteforce
from cliffordweil.cwgroup import group_for
from cliffordweil.typespec import BUILTIN_NAMES, TwistedSum, builtin


@lru_cache(maxsize=None)
def group(name, m=1):
    return group_for(builtin(name), m)


@lru_cache(maxsize=None)
def closed_group(name, m=1):
    G = group_for(builtin(name), m)
    G.closure()
    return G


@lru_cache(maxsize=None)
def classes(name, N):
    return enumerate_bruteforce(TwistedSum.nn(builtin(name), N))


@pytest.fixture(params=BUILTIN_NAMES)
def type_name(request):
    return request.param
