import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from padyn import _kernels_py, kernels

BACKENDS = [_kernels_py]
try:
    from padyn import _kernels as _compiled
    BACKENDS.append(_compiled)
except ImportError:  # extension not built
    _compiled = None

MODULI = [2 ** 20, 3 ** 30, 2 ** 62 - 57, 5 ** 40, 7]


def naive_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % m
    return out


def naive_rem(a, g, m):
    k = len(g) - 1
    r = list(a) + [0] * max(0, k - len(a))
    for i in range(len(r) - 1, k - 1, -1):
        c = r[i]
        for j in range(k + 1):
            r[i - k + j] = (r[i - k + j] - c * g[j]) % m
    return [x % m for x in r[:k]]


def naive_compose(f, g, n, m):
    acc = [0] * n
    power = [1] + [0] * (n - 1)
    for c in f[:n]:
        acc = [(x + c * y) % m for x, y in zip(acc, power)]
        power = (naive_mul(power, g, m) + [0] * n)[:n]
    return acc


@st.composite
def vectors(draw, m, min_size=1, max_size=24):
    return draw(st.lists(st.integers(0, m - 1), min_size=min_size, max_size=max_size))


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
@pytest.mark.parametrize("m", MODULI)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_kernels_match_schoolbook(backend, m, data):
    a = data.draw(vectors(m))
    b = data.draw(vectors(m))
    assert backend.mul(a, b, m) == naive_mul(a, b, m)
    n = data.draw(st.integers(1, 30))
    full = naive_mul(a, b, m) + [0] * n
    assert backend.mul_trunc(a, b, n, m) == full[:n]
    g = data.draw(vectors(m, 1, 8)) + [1]
    assert backend.rem_monic(a, g, m) == naive_rem(a, g, m)
    f = [0] + data.draw(vectors(m, 1, 10))
    h = [0] + data.draw(vectors(m, 1, 10))
    k = data.draw(st.integers(1, 12))
    assert backend.compose_trunc(f, h, k, m) == naive_compose(f, h, k, m)


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    if _compiled is not None:
        assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, PADYN_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from padyn import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
