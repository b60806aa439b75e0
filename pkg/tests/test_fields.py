import numpy as np
import pytest

from spinray.errors import OutOfDomainError
from spinray.fields import (
    ConstantIndex,
    GaussianBumpIndex,
    GridIndex,
    LinearGradientIndex,
    dump_index_grid,
    load_index_grid,
    velocity_data,
)


def fd_gradient(field, x, h=1e-6):
    g = np.zeros(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        g[i] = (field.value(x + e) - field.value(x - e)) / (2 * h)
    return g


def fd_hessian(field, x, h=1e-4):
    m = np.zeros((3, 3))
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        m[i] = (field.gradient(x + e) - field.gradient(x - e)) / (2 * h)
    return 0.5 * (m + m.T)


def analytic_fields(rng):
    return [
        ConstantIndex(n0=rng.uniform(1.0, 2.0)),
        LinearGradientIndex(n0=rng.uniform(1.2, 2.0), k=rng.uniform(-0.3, 0.3, size=3)),
        GaussianBumpIndex(
            n0=rng.uniform(1.0, 1.5),
            amplitude=rng.uniform(-0.3, 0.5),
            center=rng.uniform(-0.5, 0.5, size=3),
            width=rng.uniform(1.0, 2.0),
        ),
    ]


def test_analytic_derivatives_match_finite_differences(rng):
    for _ in range(20):
        for field in analytic_fields(rng):
            x = rng.uniform(-0.8, 0.8, size=3)
            assert np.allclose(field.gradient(x), fd_gradient(field, x), atol=1e-8)
            assert np.allclose(field.hessian(x), fd_hessian(field, x), atol=1e-6)


def test_constant_index_rejects_tiny_values():
    with pytest.raises(ValueError):
        ConstantIndex(n0=0.0)
    with pytest.raises(ValueError):
        ConstantIndex(n0=-1.0)


def test_linear_gradient_out_of_domain():
    field = LinearGradientIndex(n0=1.0, k=[0.0, 0.0, 1.0])
    assert field.value([0, 0, 0.5]) == 1.5
    with pytest.raises(OutOfDomainError):
        field.value([0, 0, -1.5])
    with pytest.raises(OutOfDomainError):
        field.gradient([0, 0, -1.5])


def test_gaussian_bump_peak_and_symmetry():
    field = GaussianBumpIndex(n0=1.0, amplitude=0.4, center=[1.0, 0.0, 0.0], width=0.7)
    assert np.isclose(field.value([1, 0, 0]), 1.4)
    assert np.allclose(field.gradient([1, 0, 0]), 0.0, atol=1e-15)
    # hessian at the peak is -A/w^2 times the identity
    assert np.allclose(field.hessian([1, 0, 0]), -0.4 / 0.49 * np.eye(3), atol=1e-12)
    r = np.array([0.3, -0.2, 0.5])
    assert np.isclose(field.value([1, 0, 0] + r), field.value([1, 0, 0] - r))


def test_grid_matches_sampled_linear_field_exactly(rng):
    # trilinear interpolation reproduces an affine function exactly, and
    # central differences of affine samples are exact as well
    k = np.array([0.05, -0.03, 0.08])
    xs = np.linspace(-1.0, 1.0, 9)
    grid_vals = np.empty((9, 9, 9))
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            for l, z in enumerate(xs):
                grid_vals[i, j, l] = 1.5 + k @ [x, y, z]
    grid = GridIndex(values=grid_vals, origin=(-1.0, -1.0, -1.0), spacing=(0.25, 0.25, 0.25))
    exact = LinearGradientIndex(n0=1.5, k=k)
    for _ in range(40):
        x = rng.uniform(-0.7, 0.7, size=3)
        assert np.isclose(grid.value(x), exact.value(x), atol=1e-12)
        assert np.allclose(grid.gradient(x), k, atol=1e-12)
        assert np.allclose(grid.hessian(x), 0.0, atol=1e-12)


def test_grid_approximates_smooth_field(rng):
    bump = GaussianBumpIndex(n0=1.2, amplitude=0.3, center=[0, 0, 0], width=1.0)
    xs = np.linspace(-1.5, 1.5, 31)
    vals = np.empty((31, 31, 31))
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            for l, z in enumerate(xs):
                vals[i, j, l] = bump.value([x, y, z])
    grid = GridIndex(values=vals, origin=(-1.5, -1.5, -1.5), spacing=(0.1, 0.1, 0.1))
    for _ in range(30):
        x = rng.uniform(-0.8, 0.8, size=3)
        assert abs(grid.value(x) - bump.value(x)) < 2e-3
        assert np.allclose(grid.gradient(x), bump.gradient(x), atol=5e-3)
        assert np.allclose(grid.hessian(x), bump.hessian(x), atol=3e-2)


def test_grid_interior_only():
    vals = np.full((5, 5, 5), 1.5)
    grid = GridIndex(values=vals, origin=(0, 0, 0), spacing=(1, 1, 1))
    grid.value([2.0, 2.0, 2.0])
    # cells touching the outer boundary are out of domain
    with pytest.raises(OutOfDomainError):
        grid.value([0.5, 2.0, 2.0])
    with pytest.raises(OutOfDomainError):
        grid.value([2.0, 2.0, 3.5])
    with pytest.raises(OutOfDomainError):
        grid.value([-1.0, 2.0, 2.0])


def test_grid_constructor_validation():
    with pytest.raises(ValueError):
        GridIndex(values=np.ones((3, 5, 5)), origin=(0, 0, 0), spacing=(1, 1, 1))
    with pytest.raises(ValueError):
        GridIndex(values=np.ones((5, 5)), origin=(0, 0, 0), spacing=(1, 1, 1))
    with pytest.raises(ValueError):
        GridIndex(values=np.ones((5, 5, 5)), origin=(0, 0, 0), spacing=(1, 0, 1))
    bad = np.ones((5, 5, 5))
    bad[2, 2, 2] = np.nan
    with pytest.raises(ValueError):
        GridIndex(values=bad, origin=(0, 0, 0), spacing=(1, 1, 1))


def test_grid_round_trip_through_text(rng):
    vals = 1.0 + rng.uniform(0.0, 0.5, size=(4, 5, 6))
    grid = GridIndex(values=vals, origin=(-1.0, 0.0, 2.0), spacing=(0.5, 0.25, 0.125))
    text = dump_index_grid(grid)
    back = load_index_grid(text)
    assert np.array_equal(back.values, grid.values)
    assert np.array_equal(back.origin, grid.origin)
    assert np.array_equal(back.spacing, grid.spacing)


def test_grid_text_is_x_fastest(tmp_path):
    # 4x4x4 grid whose value encodes the x index; the first four samples
    # of the document must run through x at fixed y, z
    vals = np.empty((4, 4, 4))
    for i in range(4):
        vals[i, :, :] = float(i)
    text = dump_index_grid(GridIndex(values=vals, origin=(0, 0, 0), spacing=(1, 1, 1)))
    body = text.splitlines()[1:]
    assert [float(tok) for tok in body[:4]] == [0.0, 1.0, 2.0, 3.0]
    path = tmp_path / "field.grid"
    path.write_text(text)
    assert np.array_equal(load_index_grid(path).values, vals)


def test_load_index_grid_rejects_malformed():
    with pytest.raises(ValueError):
        load_index_grid("grid 2 2\n1 2 3 4\n")
    with pytest.raises(ValueError):
        load_index_grid("lattice 4 4 4 0 0 0 1 1 1\n" + "1.0\n" * 64)
    with pytest.raises(ValueError):
        load_index_grid("grid 4 4 4 0 0 0 1 1 1\n" + "1.0\n" * 63)


def test_velocity_data_identities(rng):
    for _ in range(30):
        for field in analytic_fields(rng):
            x = rng.uniform(-0.8, 0.8, size=3)
            vd = velocity_data(field, x)
            n = field.value(x)
            assert np.isclose(vd.v, 1.0 / n)
            assert np.isclose(vd.n, n)
            assert np.allclose(vd.g, -field.gradient(x) / n**2, atol=1e-14)
            assert np.allclose(vd.dg, vd.dg.T, atol=1e-14)
            assert np.isclose(vd.div_g, np.trace(vd.dg))


def test_velocity_gradient_matches_finite_differences(rng):
    # dg must be the derivative matrix of g = grad(1/n)
    h = 1e-5
    for _ in range(10):
        for field in analytic_fields(rng):
            x = rng.uniform(-0.5, 0.5, size=3)
            vd = velocity_data(field, x)
            fd = np.zeros((3, 3))
            for i in range(3):
                e = np.zeros(3)
                e[i] = h
                gp = velocity_data(field, x + e).g
                gm = velocity_data(field, x - e).g
                fd[:, i] = (gp - gm) / (2 * h)
            assert np.allclose(vd.dg, fd, atol=1e-7)
