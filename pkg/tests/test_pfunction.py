import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville.core import log_grid, make_problem
from nliouville.errors import CriticalPointError, DomainError
from nliouville.pfunction import (
    constancy_certificate,
    e_tensor,
    endpoint_v,
    lambda_from_p0,
    p0_from_lambda,
    perturbed_profile,
    profile_from_planar,
    profile_from_radial,
    subharmonicity_probe_2d,
)
from nliouville.solutions import PlanarSolution, radial_solution

GRID = log_grid()


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
def test_p_constant_on_radial_family(n, alpha):
    prof = profile_from_radial(radial_solution(n, alpha, 3.0))
    p0, dev = constancy_certificate(prof, GRID)
    assert dev / p0 < 1e-9
    assert lambda_from_p0(prof.problem, p0, "radial") == pytest.approx(3.0, rel=1e-8)


def test_p_constant_on_shifted_planar_family(rng):
    sol = PlanarSolution(0.7, 0.5 + 0.5j, 2)
    prof = profile_from_planar(sol)
    z = np.exp(rng.uniform(-2, 2, 200)) * np.exp(2j * np.pi * rng.uniform(size=200))
    p0, dev = constancy_certificate(prof, z)
    assert dev / p0 < 1e-9
    assert lambda_from_p0(prof.problem, p0) == pytest.approx(0.7, rel=1e-12)


def test_reference_p0_value():
    # N = 3, alpha = 0, lambda = 1
    assert p0_from_lambda(make_problem(3, 0.0), 1.0) == pytest.approx(0.436790232368, rel=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.floats(-0.9, 4.0), st.floats(0.01, 100.0), st.sampled_from(["radial", None]))
def test_dictionary_round_trip(n, alpha, lam, family):
    p = make_problem(n, alpha)
    assert lambda_from_p0(p, p0_from_lambda(p, lam, family), family) == pytest.approx(lam, rel=1e-12)


def test_planar_and_radial_dictionaries_agree():
    p = make_problem(2, 0.5)
    lam = 1.7
    assert p0_from_lambda(p, lam, "planar") == pytest.approx(p0_from_lambda(p, lam**2, "radial"), rel=1e-13)


def test_endpoint_v_matches_solution():
    sol = radial_solution(3, 0.5, 2.0)
    prof = profile_from_radial(sol)
    x = np.array([[0.1, 0.2, 0.3], [1.0, -2.0, 0.5]])
    p0 = p0_from_lambda(sol.problem, 2.0)
    assert np.allclose(endpoint_v(sol.problem, p0, x), prof.v(x), rtol=1e-12)


def test_p_at_origin_uses_weighted_gradient():
    prof = profile_from_radial(radial_solution(3, 0.5, 1.0))
    p0 = float(prof.p(np.array([0.5, 0.5, 0.5])))
    assert float(prof.p(np.zeros(3))) == pytest.approx(p0, rel=1e-12)
    neg = profile_from_radial(radial_solution(3, -0.5, 1.0))
    with pytest.raises(DomainError):
        neg.p(np.zeros(3))


@pytest.mark.parametrize("n, alpha", [(2, 0.0), (2, 1.5), (3, -0.5), (3, 0.5), (4, 2.0)])
def test_e_tensor_vanishes(n, alpha):
    prof = profile_from_radial(radial_solution(n, alpha, 1.3))
    x = np.linspace(0.3, 0.9, n)
    chk = e_tensor(prof, x)
    assert chk.frob_norm_e < 1e-10
    assert chk.frob_norm_e_fd < 1e-5
    assert chk.trace_defect < 1e-10
    # independent route: P = |x|^(-N alpha) div(|dv|^(N-2) dv)
    assert chk.divergence_p == pytest.approx(chk.p, rel=1e-6)


def test_e_tensor_nonzero_off_solutions():
    prof = perturbed_profile(profile_from_radial(radial_solution(3, 0.5, 1.0)), 0.05)
    assert e_tensor(prof, np.array([0.4, 0.5, 0.6])).frob_norm_e > 1e-4


def test_e_tensor_guards():
    prof = profile_from_radial(radial_solution(3, 0.5, 1.0))
    with pytest.raises(DomainError):
        e_tensor(prof, np.zeros(3))
    shifted = profile_from_planar(PlanarSolution(1.0, -1.0, 0))
    with pytest.raises(CriticalPointError):
        e_tensor(shifted, np.array([1.0, 0.0]))


def test_subharmonicity_identity_on_solutions():
    for prof in (profile_from_radial(radial_solution(2, 0.5, 1.0)),
                 profile_from_planar(PlanarSolution(1.0, 0.3 + 0.2j, 1))):
        probe = subharmonicity_probe_2d(prof, np.array([0.7, 0.4]), h=1e-2)
        assert probe.lhs == pytest.approx(probe.rhs, abs=1e-8)


def test_subharmonicity_general_identity_second_order():
    base = profile_from_planar(PlanarSolution(1.0, 0.3 + 0.2j, 1))
    prof = perturbed_profile(base, 0.01)
    x = np.array([0.7, 0.4])
    d = [abs(p.lhs - p.rhs_general) for p in (subharmonicity_probe_2d(prof, x, h) for h in (0.04, 0.02, 0.01))]
    assert math.log2(d[0] / d[1]) == pytest.approx(2.0, abs=0.1)
    assert math.log2(d[1] / d[2]) == pytest.approx(2.0, abs=0.1)


def test_subharmonicity_negative_control():
    # off the solution set the solution-only right-hand side is wrong by O(1)
    prof = perturbed_profile(profile_from_radial(radial_solution(2, 0.5, 1.0)), 0.01)
    probe = subharmonicity_probe_2d(prof, np.array([0.7, 0.4]), 1e-2)
    assert abs(probe.lhs - probe.rhs) > 1e-2
    assert abs(probe.lhs - probe.rhs_general) < 1e-4


def test_subharmonicity_guards():
    with pytest.raises(DomainError):
        subharmonicity_probe_2d(profile_from_radial(radial_solution(3, 0.0)), np.ones(3))
    with pytest.raises(DomainError):
        subharmonicity_probe_2d(profile_from_radial(radial_solution(2, 0.0)), np.zeros(2))
