import pytest

from masseycurve.curve import build_context
from masseycurve.poly import parse_poly


@pytest.fixture(scope="session")
def cubic():
    return build_context(parse_poly("x0^3 + x1^3 + x2^3"))


@pytest.fixture(scope="session")
def quartic():
    return build_context(parse_poly("x0^4 + x1^4 + x2^4"))


@pytest.fixture(scope="session")
def quintic():
    return build_context(parse_poly("x0^5 + x1^5 + x2^5"))
