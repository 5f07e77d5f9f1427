import pytest

from companion_bv import Interval, PwmFunction, constant, polynomial, step

UNIT = Interval(0.0, 1.0)


@pytest.fixture
def unit():
    return UNIT


@pytest.fixture
def ident():
    return polynomial([0.0, 1.0], UNIT)


@pytest.fixture
def square():
    return polynomial([0.0, 0.0, 1.0], UNIT)


@pytest.fixture
def step_quarter():
    return step(0.25, UNIT)


@pytest.fixture
def step_half():
    return step(0.5, UNIT)


@pytest.fixture
def flat():
    return constant(3.0, UNIT)


@pytest.fixture
def zigzag():
    # up, jump down, down, up: exercises every convention at once
    return PwmFunction.from_pieces(
        UNIT,
        [(0.3, (0.0, 2.0)), (0.6, (1.0, -1.0)), (1.0, (-2.0, 3.0, 0.0))],
    )
