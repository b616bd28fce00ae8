import pytest

from diskgeom import CircleVector, Quadruple


@pytest.fixture
def int_quadruple() -> Quadruple:
    # exact integer lift of the curvature (-1, 2, 2, 3) configuration:
    # enclosing unit disk, two radius-1/2 disks on the x axis, top disk
    # of radius 1/3 at (0, 2/3)
    return Quadruple(
        (
            CircleVector(0.0, 0.0, -1.0, 1.0),
            CircleVector(-1.0, 0.0, 2.0, 0.0),
            CircleVector(1.0, 0.0, 2.0, 0.0),
            CircleVector(0.0, 2.0, 3.0, 1.0),
        )
    )
