import pytest

from galeres import CayleySystem, IntMatrix, PlanarConfig


@pytest.fixture
def f2_matrix() -> IntMatrix:
    return IntMatrix(
        [
            [1, 1, 0, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 0, 0],
            [0, 0, 0, 0, 1, 1, 1],
            [0, 1, 0, 0, 0, 1, 0],
            [0, 0, 0, 1, 0, 0, 1],
        ]
    )


@pytest.fixture
def f2_gale_rows() -> list[list[int]]:
    return [[1, 0], [-1, 0], [0, 1], [0, -1], [-1, -1], [1, 0], [0, 1]]


@pytest.fixture
def f2_dual(f2_gale_rows) -> PlanarConfig:
    return PlanarConfig(f2_gale_rows)


@pytest.fixture
def f2_system() -> CayleySystem:
    return CayleySystem.f2()


@pytest.fixture
def unbalanced_uniform() -> PlanarConfig:
    # uniform, nonconfluent, cocircuit {4} unbalanced
    return PlanarConfig(
        [(1, 0), (0, 1), (1, 1), (-1, 2), (2, -1), (-2, -1), (-1, -2)]
    )


@pytest.fixture
def three_line_config() -> PlanarConfig:
    # three collinear zero-sum groups: type c
    return PlanarConfig([(1, 0), (2, 0), (-3, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
