import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")

from sublorentz.contact import Frame
from sublorentz.expr import Chart
from sublorentz.parsing import parse_field


@pytest.fixture(scope="session")
def chart():
    return Chart(("x", "y", "z"))


@pytest.fixture(scope="session")
def martinet_frame(chart):
    return Frame(
        chart,
        parse_field("d/dx + (1/2)*y^2*d/dz", chart),
        parse_field("d/dy - (1/2)*x*y*d/dz", chart),
    )


@pytest.fixture(scope="session")
def heisenberg_frame(chart):
    return Frame(
        chart,
        parse_field("d/dx - (1/2)*y*d/dz", chart),
        parse_field("d/dy + (1/2)*x*d/dz", chart),
    )
