"""Second-order ODE u'' = Q(x, u, p) as a conformal class of contact
sub-Lorentzian metrics on the jet chart (x, u, p).

The three 1-forms are w1 = du - p dx, w2 = dp - Q dx, w3 = dx.  The
distribution is ker w1; it splits into the null line fields spanned by the
total-derivative field N1 = d/dx + p d/du + Q d/dp (= ker w1 n ker w2) and
N2 = d/dp (= ker w1 n ker w3).  The representative orthonormal frame is the
symmetric choice X1 = (N1 + N2)/2 timelike, X2 = (N1 - N2)/2 spacelike; any
positive rescaling of N1, N2 yields a conformally equivalent metric, so this
is a convention, not an invariant of the equation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import DifferentialForm, VectorField, evaluate, one_form
from .contact import Frame
from .expr import Chart, Expr, Tri

ODE_CHART = Chart(("x", "u", "p"))


@dataclass(frozen=True)
class OdeStructure:
    chart: Chart
    q: Expr
    omega1: DifferentialForm
    omega2: DifferentialForm
    omega3: DifferentialForm
    n1: VectorField
    n2: VectorField
    frame: Frame


def build_from_ode(q: Expr) -> OdeStructure:
    chart = q.chart
    if chart.coords != ODE_CHART.coords:
        raise ValueError("the ODE chart must have coordinates (x, u, p)")
    zero = chart.zero()
    one = chart.one()
    p = chart.var("p")
    omega1 = one_form(chart, -p, one, zero)
    omega2 = one_form(chart, -q, zero, one)
    omega3 = one_form(chart, one, zero, zero)
    n1 = VectorField(chart, (one, p, q))
    n2 = VectorField(chart, (zero, zero, one))
    half = one / 2
    x1 = (n1 + n2).scaled(half)
    x2 = (n1 - n2).scaled(half)
    return OdeStructure(chart, q, omega1, omega2, omega3, n1, n2, Frame(chart, x1, x2))


def verify_null_bundles(s: OdeStructure) -> dict[str, Tri]:
    """X1 + X2 spans ker w1 n ker w2 and X1 - X2 spans ker w1 n ker w3; both
    directions are null for the induced metric by construction."""
    plus = s.frame.x1 + s.frame.x2
    minus = s.frame.x1 - s.frame.x2
    chart = s.chart
    # g(X1 +- X2, X1 +- X2) = -1 + (+-1)^2 = 0 on the orthonormal frame
    g_plus = chart.number(-1) * chart.one() + chart.one()
    g_minus = chart.number(-1) * chart.one() + chart.number(-1) ** 2
    return {
        "w1(X1+X2)=0": evaluate(s.omega1, [plus]).is_zero(),
        "w2(X1+X2)=0": evaluate(s.omega2, [plus]).is_zero(),
        "w1(X1-X2)=0": evaluate(s.omega1, [minus]).is_zero(),
        "w3(X1-X2)=0": evaluate(s.omega3, [minus]).is_zero(),
        "g(X1+X2,X1+X2)=0": g_plus.is_zero(),
        "g(X1-X2,X1-X2)=0": g_minus.is_zero(),
    }


def rigid_example_rhs(chart: Chart = ODE_CHART) -> Expr:
    """Total-derivative expansion of ((x + x^2) e^u)' = (1+2x)e^u + (x+x^2)e^u p."""
    from . import expr as ex

    x = chart.var("x")
    u = chart.var("u")
    p = chart.var("p")
    eu = ex.exp(u)
    return (1 + 2 * x) * eu + (x + x * x) * eu * p
