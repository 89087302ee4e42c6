"""Shared instances.

The flagship system (4-vertex outer with self-loops, AGHP(10,5) inner,
s=5) is expensive enough that its DP tables are computed once per
session and shared.  The small g8 system exists because its walk
conditional means are nonzero at every level, which makes it a better
witness for identity tests than instances where everything collapses
to an exact zero.
"""

import pytest

from widewalk import (
    ReplacementSystem,
    SignedFn,
    WalkParams,
    build_aghp,
    build_complete_selfloop,
)
from widewalk.amplify import dp_gk
from widewalk.graphs import CayleyGraph


@pytest.fixture(scope="session")
def flagship():
    params = WalkParams(m=2, s=5, ell=5)
    return ReplacementSystem(build_complete_selfloop(2), build_aghp(10, 5), params)


@pytest.fixture(scope="session")
def flagship_f(flagship):
    return SignedFn.balanced(flagship.outer.num_vertices)


@pytest.fixture(scope="session")
def flagship_tables(flagship, flagship_f):
    return dp_gk(flagship, flagship_f, 20)


@pytest.fixture(scope="session")
def k16():
    return build_complete_selfloop(4, selfloop=False)


@pytest.fixture(scope="session")
def g8_system():
    # Outer graph: Cayley graph on F_2^3 with generators {1, 2}.  Its
    # degree is 2 = 2^m for m=1, and indicator functions on it have
    # nonzero step correlations, unlike the 2-vertex complete graph.
    outer = CayleyGraph(dim=3, generators=(1, 2), name="g8")
    params = WalkParams(m=1, s=2, ell=1)
    return ReplacementSystem(outer, build_aghp(2, 1), params)


@pytest.fixture(scope="session")
def g8_f(g8_system):
    return SignedFn.from_support(g8_system.outer.num_vertices, {0, 1, 2})


@pytest.fixture(scope="session")
def mono_system():
    params = WalkParams(m=3, s=2, ell=3)
    return ReplacementSystem(build_complete_selfloop(3), build_aghp(6, 3), params)
