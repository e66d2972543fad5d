import pytest

from secondlook import InformationStructure, PayoffStructure, Scenario


@pytest.fixture
def info():
    return InformationStructure(0.6, 0.8)


@pytest.fixture
def payoffs():
    return PayoffStructure(1.0, 0.0)


@pytest.fixture
def scenario(info, payoffs):
    return Scenario(info, payoffs, 0.1, (0.3, 0.7))
