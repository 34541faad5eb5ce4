"""Shared fixtures: small field contexts and constructed algebras."""
import numpy as np
import pytest

from core.families import field_semifield, gtf
from core.gf import get_context
from core.semifield import SemifieldCoeffs


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def ctx8():
    return get_context(2, 1, 3)


@pytest.fixture
def ctx16():
    return get_context(2, 1, 4)


@pytest.fixture
def ctx16_over4():
    return get_context(2, 2, 2)


@pytest.fixture
def ctx27():
    return get_context(3, 1, 3)


@pytest.fixture
def ctx81():
    return get_context(3, 1, 4)


@pytest.fixture
def ctx243():
    return get_context(3, 1, 5)


@pytest.fixture
def field16(ctx16):
    return field_semifield(ctx16)


@pytest.fixture
def gtf27(ctx27):
    return gtf(ctx27, 1, 2)


@pytest.fixture
def gtf243(ctx243):
    return gtf(ctx243, 1, 2)


def random_algebra(ctx, rng) -> SemifieldCoeffs:
    return SemifieldCoeffs(ctx, [[ctx.random_element(rng) for _ in range(ctx.n)] for _ in range(ctx.n)])
