import math

import pytest

from step_response import CubicStiffening, ExpSaturating, IntegratorConfig, SpringDashpotModel
from step_response.oracle import ExpCaseParams

SQRT3 = math.sqrt(3.0)
X_JP = math.sqrt(2.0)
EPS_JP = math.sqrt(2.0) - 1.0
MU1 = 0.1
E2 = 11.0
E3 = 3.0
GAMMA = 5.0
MASS = 7.0

# 50-digit mpmath evaluations (tests/test_oracle.py recomputes them)
G3_AT_EPS = 2.3086578651014138065
G2_INV_AT_EPS = 1.2615869439009596293
SIGMA_JP = 3.5702448090023734359
# published 10-digit value of the jump height
SIGMA_JP_REF = 3.570244804
G_PLUS = 2.8994949366116653416


def reference_model(alpha=SQRT3, gamma=GAMMA):
    return SpringDashpotModel(
        g1=ExpSaturating(alpha, MU1),
        g2=ExpSaturating(alpha, E2),
        g3=CubicStiffening(E3, gamma),
        m=MASS,
        x_eq=1.0,
    )


@pytest.fixture
def model():
    return reference_model()


@pytest.fixture
def params(model):
    return ExpCaseParams.from_model(model)


@pytest.fixture
def cfg():
    return IntegratorConfig()


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[k])
