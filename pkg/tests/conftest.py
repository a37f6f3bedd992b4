import pytest

import mmwreflect as m


@pytest.fixture(scope="session")
def layout():
    return m.CorridorLayout.default()


@pytest.fixture(scope="session")
def solution(layout):
    return m.solve_reflector_orientation(layout, 0.595)


@pytest.fixture(scope="session")
def env_with(layout, solution):
    return m.Environment(layout, solution.panel)


@pytest.fixture(scope="session")
def env_bare(layout):
    return m.Environment(layout)


@pytest.fixture(scope="session")
def rx():
    return m.Point2(3.69, 1.0)


@pytest.fixture(scope="session")
def tx16():
    return m.Point2(0.81, 4.75)
