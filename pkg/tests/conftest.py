import math

import pytest

from cheeger_forge import ArcEdge, ArcGon

# roots and reference values pinned by the oracle scripts; solver tests assert
# the solvers still reproduce them
RHO0_K6_H1 = 1.8899323409976614
RHO0_K7_H1 = 1.6698215922827664
ELL0_T13_N4_H1 = 1.6799317111795353
ELL0_T13_N10_H1 = 1.6798744970794437
SQUARE_H = 2.0 + math.sqrt(math.pi)
CANTOR_DIM_T13 = math.log(2.0) / math.log(3.0)


def disc(cx: float = 0.0, cy: float = 0.0, r: float = 1.0) -> ArcGon:
    # quarter arcs: a half-turn arc recovers its span from chord and
    # curvature through asin at its conditioning cliff, quarter turns don't
    k = 1.0 / r
    return ArcGon(
        (
            ArcEdge((cx + r, cy), (cx, cy + r), k),
            ArcEdge((cx, cy + r), (cx - r, cy), k),
            ArcEdge((cx - r, cy), (cx, cy - r), k),
            ArcEdge((cx, cy - r), (cx + r, cy), k),
        )
    )


def square(a: float = 1.0, x0: float = 0.0, y0: float = 0.0) -> ArcGon:
    return ArcGon(
        (
            ArcEdge((x0, y0), (x0 + a, y0)),
            ArcEdge((x0 + a, y0), (x0 + a, y0 + a)),
            ArcEdge((x0 + a, y0 + a), (x0, y0 + a)),
            ArcEdge((x0, y0 + a), (x0, y0)),
        )
    )


@pytest.fixture(scope="session")
def unit_disc() -> ArcGon:
    return disc()


@pytest.fixture(scope="session")
def unit_square() -> ArcGon:
    return square()
