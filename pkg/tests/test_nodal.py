import math
import warnings

import numpy as np
import pytest

from sternsphere import critical as cr
from sternsphere.legendre import legendre_zeros
from sternsphere.harmonics import Custom, EvenStern, OddStern, build_checkerboard
from sternsphere.nodal import (
    CriticalParameterWarning,
    DEFAULT_GRID,
    DegenerateGridError,
    analyze,
    antipodal_partners,
    certify_vertices,
    check_separation,
    checkerboard_signs,
    checkerboard_vertex_distances,
    count_components,
    count_nodal_domains,
    domain_labels,
    extract_nodal_set,
    hemisphere_sides,
    expected_crossings,
    sample_sign_grid,
    separation_profile,
    verify_inclusion,
)

def half_critical(ell):
    return OddStern(ell, cr.critical_mus_odd(ell).mu_c / 2)


@pytest.fixture(scope="module")
def odd3():
    fam = OddStern(3, 0.005)
    grid = sample_sign_grid(fam, *DEFAULT_GRID)
    return fam, grid, extract_nodal_set(fam, grid)


@pytest.fixture(scope="module")
def odd4():
    fam = OddStern(4, 0.002)
    grid = sample_sign_grid(fam, *DEFAULT_GRID)
    return fam, grid, extract_nodal_set(fam, grid)


@pytest.fixture(scope="module")
def even2():
    fam = EvenStern(2, 0.4, 0.001)
    grid = sample_sign_grid(fam, *DEFAULT_GRID)
    return fam, grid, extract_nodal_set(fam, grid)


# ---------------------------------------------------------------- sampling

def test_sign_changes_along_latitude_at_mu_zero():
    grid = sample_sign_grid(OddStern(3, 0.0), 64, 128)
    # sample longitudes off the meridians so that every change is strict
    theta = grid.thetas[1:-1]
    phi = (np.arange(128) + 0.5) * 2 * math.pi / 128
    vals = OddStern(3, 0.0).value(theta[:, None], phi[None, :])
    changes = np.sum(np.sign(vals) != np.sign(np.roll(vals, -1, axis=1)), axis=1)
    assert np.all(changes == 6)


def test_sign_changes_on_lattice_rows():
    # zeros on the lattice count as positive, so each row still changes sign 6 times
    grid = sample_sign_grid(OddStern(3, 0.0), 64, 120)
    s = grid.values[1:-1] >= 0
    assert np.all(np.sum(s != np.roll(s, -1, axis=1), axis=1) == 6)


def test_pole_samples_odd_degree_three():
    grid = sample_sign_grid(OddStern(3, 0.005), 64, 128)
    assert grid.pole_values == (0.005, -0.005)
    assert np.all(grid.values[0] > 0) and np.all(grid.values[-1] < 0)


def test_even_grid_antipodally_symmetric():
    n_theta, n_phi = 128, 256
    grid = sample_sign_grid(EvenStern(3, 0.4, 0.01), n_theta, n_phi)
    v = grid.values
    flipped = np.roll(v[::-1], -n_phi // 2, axis=1)
    assert np.max(np.abs(v - flipped)) < 1e-14


def test_resolution_minimum():
    with pytest.raises(ValueError):
        sample_sign_grid(OddStern(3, 0.1), 7, 64)
    with pytest.raises(ValueError):
        sample_sign_grid(OddStern(3, 0.1), 64, 4)


def test_sampling_deterministic_and_parallel_safe():
    fam = OddStern(5, 0.01)
    a = sample_sign_grid(fam, 300, 600)
    b = sample_sign_grid(fam, 300, 600, workers=4, block=37)
    assert np.array_equal(a.values, b.values)


# ---------------------------------------------------------------- components

def test_degree_three_single_closed_curve(odd3):
    _, _, ns = odd3
    assert count_components(ns) == 1
    assert ns.closed == (True,)
    assert not ns.pole_incident.any()


def test_degree_four_four_curves(odd4):
    _, _, ns = odd4
    assert count_components(ns) == 4
    assert all(ns.closed)


def test_even_two_curves_through_poles(even2):
    fam, _, ns = even2
    assert count_components(ns) == 2
    assert all(ns.closed)
    assert ns.pole_incident.any()
    assert ns.diagnostics["split_zero_poles"] == [True, True]
    # each component holds exactly one pole
    for k in range(2):
        v = ns.component_vertices(k)
        poles = {t for t in v[:, 0] if t in (0.0, math.pi)}
        assert len(poles) == 1
    assert sorted(hemisphere_sides(ns, fam.alpha)) == [-1, 1]
    assert sorted(antipodal_partners(ns)) == [0, 1]


@pytest.mark.parametrize("ell,expected", [(5, 1), (6, 6)])
def test_components_at_half_threshold(ell, expected):
    fam = half_critical(ell)
    ns = extract_nodal_set(fam, sample_sign_grid(fam, *DEFAULT_GRID))
    assert count_components(ns) == expected


def test_mu_zero_meridians_stitched_at_poles():
    fam = OddStern(3, 0.0)
    ns = extract_nodal_set(fam, sample_sign_grid(fam, 128, 240))
    assert count_components(ns) == 1
    assert ns.diagnostics["zero_poles"] == [True, True]
    assert ns.pole_incident.all()


def test_empty_nodal_set():
    fam = Custom(lambda t, p: 2.0 + np.cos(t))
    ns = extract_nodal_set(fam, sample_sign_grid(fam, 32, 64))
    assert ns.is_empty and ns.n_components == 0


def test_count_components_warns_at_critical():
    fam = OddStern(3, math.sqrt(2))
    with pytest.warns(CriticalParameterWarning):
        ns = extract_nodal_set(fam, sample_sign_grid(fam, 128, 256))
    assert ns.diagnostics["at_critical"]
    with pytest.warns(CriticalParameterWarning):
        count_components(ns)


def test_chain_vertices_lie_on_grid_edges(odd3):
    _, _, ns = odd3
    keep = ~np.isnan(ns.edge_ends[:, 0])
    t0, p0, t1, p1 = ns.edge_ends[keep].T
    th, ph = ns.vertices[keep].T
    assert np.all((np.minimum(t0, t1) - 1e-15 <= th) & (th <= np.maximum(t0, t1) + 1e-15))
    # phi edges may wrap through 2 pi; compare along the short way round
    span = (p1 - p0 + math.pi) % (2 * math.pi) - math.pi
    off = (ph - p0 + math.pi) % (2 * math.pi) - math.pi
    assert np.all(np.abs(off) <= np.abs(span) + 1e-12)


# ---------------------------------------------------------------- domains

def test_domains_degree_three(odd3):
    _, grid, _ = odd3
    assert count_nodal_domains(grid) == 2


def test_domains_degree_four(odd4):
    _, grid, _ = odd4
    assert count_nodal_domains(grid) == 5


def test_domains_even(even2):
    _, grid, _ = even2
    assert count_nodal_domains(grid) == 3


def test_domains_degree_two_custom():
    fam = Custom.from_cartesian(lambda x, y, z: x * y + 0.05 * (2 * z * z - x * x - y * y))
    assert count_nodal_domains(sample_sign_grid(fam, *DEFAULT_GRID)) == 3


@pytest.mark.parametrize("shape", [(512, 1024), (1024, 2048), (2048, 4096)])
def test_domains_at_sqrt2(shape):
    grid = sample_sign_grid(OddStern(3, math.sqrt(2)), *shape)
    assert count_nodal_domains(grid) == 8


def test_sqrt2_barriers_are_the_critical_zeros():
    grid = sample_sign_grid(OddStern(3, math.sqrt(2)), 256, 512)
    # without them the lattice cannot separate the domains touching at a crossing
    assert count_nodal_domains(grid, barriers=[]) < 8


def test_domain_labels_cover_signed_samples(odd3):
    _, grid, _ = odd3
    labels, n = domain_labels(grid)
    assert n == 2
    assert set(np.unique(labels)) <= {0, 1, 2}
    inner = grid.values[1:grid.n_theta]
    assert np.all(labels[np.abs(inner) > 1e-12 * grid.scale] > 0)


def test_degenerate_grid_raises():
    fam = Custom(lambda t, p: 0.0 * t)
    with pytest.raises(DegenerateGridError):
        count_nodal_domains(sample_sign_grid(fam, 16, 32))


@pytest.mark.parametrize("ell", [3, 4, 5])
def test_domains_equal_components_plus_one(ell):
    fam = half_critical(ell)
    grid = sample_sign_grid(fam, *DEFAULT_GRID)
    assert count_nodal_domains(grid) == extract_nodal_set(fam, grid).n_components + 1


# ---------------------------------------------------------------- inclusion

def test_inclusion_degree_four(odd4):
    fam, _, ns = odd4
    res = verify_inclusion(ns, build_checkerboard(fam))
    assert res.violations == 0
    # the curve hugs the cell boundaries at this small mu, so many vertices are
    # inside the guard band; enough remain to make the check meaningful
    assert res.checked > 1000


def test_inclusion_even_degree_six():
    fam = EvenStern(3, 0.4, 1e-3)
    ns = extract_nodal_set(fam, sample_sign_grid(fam, *DEFAULT_GRID))
    assert verify_inclusion(ns, build_checkerboard(fam)).violations == 0


def test_inclusion_detects_wrong_sign(odd4):
    # the same nodal set judged against the opposite perturbation sign lands
    # entirely in forbidden cells
    fam, _, ns = odd4
    cb = build_checkerboard(fam)
    keep = ~np.isin(ns.vertices[:, 0], [0.0, math.pi])
    signs = checkerboard_signs(cb, ns.vertices[keep, 0], ns.vertices[keep, 1])
    assert np.mean(signs < 0) > 0.9


def test_checkerboard_signs_match_cells():
    fam = EvenStern(2, 0.4, 0.001)
    cb = build_checkerboard(fam)
    c = [cell.center() for cell in cb.cells]
    got = checkerboard_signs(cb, [p.theta for p in c], [p.phi for p in c])
    assert list(got) == [cell.sign for cell in cb.cells]


# ---------------------------------------------------------------- separation

def test_separation_even_degree_odd_meridian():
    fam = half_critical(4)
    a = legendre_zeros(4).thetas[0]
    for j in (1, 3, 5, 7):
        z = separation_profile(fam, (j + 0.5) * math.pi / 4)
        assert len(z) == 2
        assert 0 < z[0] < a and math.pi - a < z[1] < math.pi


def test_separation_odd_degree_even_meridian():
    fam = half_critical(5)
    a = legendre_zeros(5).thetas[0]
    for j in (0, 2, 4, 6, 8):
        z = separation_profile(fam, (j + 0.5) * math.pi / 5)
        assert len(z) == 1 and math.pi - a < z[0] < math.pi


@pytest.mark.parametrize("fam", [half_critical(4), half_critical(5), EvenStern(2, 0.4, 1e-3),
                                 EvenStern(3, 0.4, 1e-3)], ids=repr)
def test_all_bisectors_match_expected_crossings(fam):
    results = check_separation(fam)
    assert results and all(r.ok for r in results)


def test_even_expected_crossings():
    fam = EvenStern(2, 0.4, 1e-3)
    # sectors 5 and 7 hold one zero near the south pole, sector 6 near the north pole
    assert expected_crossings(fam, 5) == (0, 0, 1)
    assert expected_crossings(fam, 6) == (1, 0, 0)
    assert expected_crossings(fam, 7) == (0, 0, 1)
    with pytest.raises(ValueError):
        expected_crossings(fam, 4)


def test_odd_expected_crossings():
    assert expected_crossings(half_critical(4), 1) == (1, 0, 1)
    assert expected_crossings(half_critical(4), 2) == (0, 0, 0)
    assert expected_crossings(half_critical(5), 2) == (0, 0, 1)
    assert expected_crossings(half_critical(5), 3) == (1, 0, 0)


def test_odd_degree_curve_crosses_each_bisector_once(odd3):
    fam, _, ns = odd3
    # each B_j meets the single component exactly once
    for s in check_separation(fam):
        assert sum(s.counts) == 1


# ---------------------------------------------------------------- vertices

def test_checkerboard_vertices_on_nodal_set(odd4):
    fam, grid, ns = odd4
    d = checkerboard_vertex_distances(ns, build_checkerboard(fam))
    assert len(d) == 2 * 16
    assert np.max(d) <= grid.cell_size


def test_even_checkerboard_vertices_on_nodal_set(even2):
    fam, grid, ns = even2
    d = checkerboard_vertex_distances(ns, build_checkerboard(fam))
    assert len(d) == 26
    assert np.max(d) <= grid.cell_size


def test_vertex_certification(odd3, even2):
    for _, grid, ns in (odd3, even2):
        res, dist = certify_vertices(ns)
        assert np.max(res) < 1e-10
        assert np.max(dist) <= grid.cell_size


# ---------------------------------------------------------------- reports

@pytest.mark.parametrize("fam", [half_critical(3), half_critical(4)], ids=repr)
def test_doubling_stability(fam):
    a, _, _ = analyze(fam, 512, 1024, separation=False, certify=False)
    b, _, _ = analyze(fam, 1024, 2048, separation=False, certify=False)
    assert (a.n_components, a.n_domains) == (b.n_components, b.n_domains)


def test_analyze_report(odd3):
    rep, ns, grid = analyze(OddStern(3, 0.005))
    assert rep.n_components == 1 and rep.n_domains == 2
    assert rep.inclusion_violations == 0
    assert rep.separation_ok and rep.vertices_on_nodal_set and rep.all_closed
    assert not rep.at_critical
    d = rep.to_dict()
    assert d["params"] == {"ell": 3, "mu": 0.005} and d["grid"] == DEFAULT_GRID


def test_analyze_flags_critical():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CriticalParameterWarning)
        rep, _, _ = analyze(OddStern(3, math.sqrt(2)), 256, 512, separation=False)
    assert rep.at_critical and rep.n_domains == 8
