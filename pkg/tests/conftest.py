from fractions import Fraction

import pytest

from logklab.pairmodel import CATALOG, DivisorSpec
from logklab.weightoracle import HilbertModel


@pytest.fixture
def p2():
    return CATALOG["P2-line"].pair


@pytest.fixture
def p3():
    return CATALOG["P3-hyperplane"].pair


@pytest.fixture
def p1xp1():
    return CATALOG["P1xP1-diag"].pair


@pytest.fixture
def fano():
    return CATALOG["Fano-template"].pair


@pytest.fixture
def unit_divisor():
    return DivisorSpec(1)


@pytest.fixture
def p2_model():
    return HilbertModel.projective_space(2)


# (pair name, model) for every catalog entry with a dimension model
ORACLE_MODELS = [
    ("P2-line", HilbertModel.projective_space(2)),
    ("P3-hyperplane", HilbertModel.projective_space(3)),
    ("P4-hyperplane", HilbertModel.projective_space(4)),
    ("P1xP1-diag", HilbertModel.product_p1p1()),
]

# criterion-2 oracle triangulation grid
TRIANGULATION_PAIRS = ["P2-line", "P3-hyperplane", "P1xP1-diag"]
TRIANGULATION_CS = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]
TRIANGULATION_BETAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)]


def model_for(name: str) -> HilbertModel:
    for entry_name, model in ORACLE_MODELS:
        if entry_name == name:
            return model
    raise KeyError(name)
