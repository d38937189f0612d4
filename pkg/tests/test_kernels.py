import os
import random
import subprocess
import sys

import pytest

from ising_lab import kernels
from ising_lab.blockpaths import walk_gf
from ising_lab.generators import complete, cube, petersen, random_multigraph
from ising_lab.partition import z_even_poly, z_ising_poly


def corpus(max_edges=10):
    rng = random.Random(4)
    return [cube(), petersen(), complete(5)] + [random_multigraph(rng, 6, max_edges) for _ in range(40)]


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
@pytest.mark.parametrize("fn", [z_ising_poly, z_even_poly])
def test_backends_agree_on_partition_functions(fn):
    for g in corpus():
        assert fn(g) == fn(g, force_python=True)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
def test_backends_agree_on_trails():
    # piles of loops on one vertex have millions of trails, so keep multigraphs small
    for g in corpus(max_edges=6):
        for v in range(g.n) if g.m <= 6 else [0]:
            assert walk_gf(g, v).counts == walk_gf(g, v, force_python=True).counts


def test_environment_forces_fallback():
    code = "from ising_lab import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, ISING_LAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_answers_small_cases():
    assert kernels.BACKEND in ("cython", "python")
    assert z_ising_poly(complete(2), force_python=True).coeffs == (2, 2)
