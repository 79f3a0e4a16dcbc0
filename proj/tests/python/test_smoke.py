import math
import sys

import pytest

try:
    import _gburgers as gb
except ImportError:  # pragma: no cover
    pytest.skip("compiled module not on PYTHONPATH", allow_module_level=True)


def test_kernel_values():
    assert gb.eval_G(0.0, 1.0, 0.0, 0.0) == pytest.approx(1.0 / math.sqrt(4.0 * math.pi))
    assert abs(gb.integral_G(0.5) - 1.0) < 1e-10
    assert gb.integral_absGs(1.0) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-10)
    signed, absolute = gb.integral_Gss(1.0)
    assert abs(signed) < 1e-8
    assert absolute == pytest.approx(0.48394144903828670, rel=1e-9)
    with pytest.raises(ValueError):
        gb.eval_G(0.0, 1.0, 0.0, 2.0)


def test_coefficient():
    c = gb.Coefficient(1.0)
    assert c.h(0.0) == 1.0
    assert c.sup_dh() == pytest.approx(0.64951905283832899)
    assert abs(c.dh(c.argmax_dh())) == pytest.approx(c.sup_dh())


def test_certified_step_and_solve():
    c = gb.Coefficient(1.0)
    t_star = gb.certified_step(1.0, c)
    assert t_star == pytest.approx(0.019773, rel=1e-3)

    cfg = gb.SolverConfig()
    cfg.grid.nx = 129
    cfg.base_slices = 6
    cfg.time_panels = 2
    cfg.nodes_per_panel = 6

    data = gb.InitialData.step(-1.0, 1.0)
    patch = gb.solve_local(data, 0.0, c, cfg)
    assert patch.iterations <= 40
    assert patch.residual_history[-1] <= 1e-8
    terminal = patch.fields[-1]
    assert terminal.t == pytest.approx(t_star)
    assert terminal.sup_norm() <= 1.0 + 1e-4


def test_heat_convolution_closed_form():
    d = gb.InitialData.step(0.0, 1.0)
    x, t = 0.5, 0.25
    assert d.heat_convolution(x, t) == pytest.approx(
        0.5 * math.erfc(-x / (2.0 * math.sqrt(t))), rel=1e-13
    )


def test_gronwall_series():
    assert gb.gronwall_series(1.0, 1.0) == pytest.approx(0.58269972789417754, rel=1e-12)
    with pytest.raises(ValueError):
        gb.gronwall_series(-1.0, 1.0)
