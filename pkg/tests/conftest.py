import contextlib

import pytest

from fgflip import braidgraph, modulardata, triangle, wordalgebra


def clear_caches():
    for mod in (triangle, braidgraph, wordalgebra, modulardata):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


@contextlib.contextmanager
def perturbed_pairing(N=3, a=(2, 1, 0), b=(1, 1, 1)):
    """Shift one entry of the cached pairing matrix of nabla_N, then restore it."""
    sp = triangle.build_triangle(N).space
    i, j = sp.index[a], sp.index[b]
    old = sp._adj[i].get(j, 0)
    sp._adj[i][j], sp._adj[j][i] = old + 1, -(old + 1)
    try:
        yield sp
    finally:
        if old:
            sp._adj[i][j], sp._adj[j][i] = old, -old
        else:
            del sp._adj[i][j], sp._adj[j][i]
        clear_caches()


@pytest.fixture
def perturb():
    return perturbed_pairing
