import numpy as np
import pytest

from clcst.algebra import scalar_part, transform_algebra
from clcst.cft import cft_forward
from clcst.grid import GridSignal, GridSpec, phase_multiply, rel_l2_error, sample
from clcst.lct import (
    DegenerateBranchError,
    LCTError,
    LCTParams,
    ResamplingUnsupportedError,
    clct_forward,
    clct_forward_direct,
    clct_kernel,
    lct_convolution_theorem_rhs,
    lct_convolve,
    output_lattice_axis,
)

SPEC = GridSpec(2, 6.0, 64)
CTX = transform_algebra(2)


def random_signal(seed, spec=SPEC, ctx=CTX):
    rng = np.random.default_rng(seed)
    return GridSignal(spec, ctx, rng.standard_normal((ctx.blade_count,) + spec.shape))


def gaussian(spec=SPEC, ctx=CTX, width=1.0, center=0.0):
    return sample(lambda x: np.exp(-np.sum((x - center) ** 2, axis=0) / width), spec, ctx)


def test_determinant_validation():
    LCTParams(1, 2, 1, 3)
    with pytest.raises(LCTError):
        LCTParams(1, 2, 1, 2)


def test_cft_parameter_point():
    m = LCTParams.cft_point()
    assert m.as_tuple() == (0.0, 1.0, -1.0, 0.0)
    assert m.is_cft_point()


def test_kernel_reduces_to_cft_kernel():
    m = LCTParams.cft_point()
    rng = np.random.default_rng(0)
    for _ in range(5):
        u, x = rng.uniform(-2, 2, size=(2, 2))
        k = clct_kernel(m, CTX, u, x)
        from clcst.algebra import pseudoscalar_exp

        expect = pseudoscalar_exp(CTX, -float(np.dot(x, u))) * (2 * np.pi) ** (-1)
        assert np.allclose(k.coeffs, expect.coeffs, atol=1e-15)


def test_kernel_at_origin_is_amplitude():
    m = LCTParams(1, 2, 1, 3)
    k = clct_kernel(m, CTX, np.zeros(2), np.zeros(2))
    assert scalar_part(k) == pytest.approx(1.0 / np.sqrt((2 * np.pi) ** 2 * 2), rel=1e-14)
    assert np.allclose(k.coeffs[1:], 0.0)


def test_kernel_phase_arithmetic():
    # (A,B,D) = (1,2,1), x=(1,0), u=(2,0): phase = 1/4 - 1 + 1 = 1/4
    m = LCTParams(1, 2, 0, 1)
    k = clct_kernel(m, CTX, np.array([2.0, 0.0]), np.array([1.0, 0.0]))
    amp = 1.0 / np.sqrt((2 * np.pi) ** 2 * 2)
    assert scalar_part(k) == pytest.approx(amp * np.cos(0.25), rel=1e-14)
    assert k.coeffs[CTX.full_mask] == pytest.approx(amp * np.sin(0.25), rel=1e-14)


def test_kernel_degenerate_branch_error():
    with pytest.raises(DegenerateBranchError):
        clct_kernel(LCTParams(1, 0, 0.5, 1), CTX, np.zeros(2), np.zeros(2))


def test_forward_reduces_to_cft():
    f = random_signal(1)
    out = clct_forward(f, LCTParams.cft_point())
    assert rel_l2_error(out, cft_forward(f)) < 1e-12


def test_forward_zero():
    z = GridSignal.zero(SPEC, CTX)
    assert np.all(clct_forward(z, LCTParams(1, 2, 1, 3)).data == 0.0)


@pytest.mark.parametrize(
    "m",
    [LCTParams(1, 1, 0, 1), LCTParams(1, 2, 1, 3), LCTParams(2, 1, 1, 1), LCTParams(1, -1, 0, 1)],
    ids=["fresnel", "generic", "steep", "negative-B"],
)
def test_fast_path_matches_direct_quadrature(m):
    for seed in (2, 3):
        f = random_signal(seed)
        assert rel_l2_error(clct_forward(f, m), clct_forward_direct(f, m)) < 1e-10
    g = gaussian()
    assert rel_l2_error(clct_forward(g, m), clct_forward_direct(g, m)) < 1e-10


def test_forward_linearity():
    m = LCTParams(1, 2, 1, 3)
    f, g = random_signal(4), random_signal(5)
    combo = clct_forward(f.scale(0.3) + g.scale(-1.7), m)
    split = clct_forward(f, m).scale(0.3) + clct_forward(g, m).scale(-1.7)
    assert rel_l2_error(combo, split) < 1e-13


def test_output_lattice_scaling():
    m = LCTParams(1, 2, 1, 3)
    axis = output_lattice_axis(m, SPEC)
    assert axis[SPEC.samples_per_axis // 2] == 0.0
    assert axis[1] - axis[0] == pytest.approx(2 * SPEC.dw)


def test_scaling_branch_identity_d():
    # M = (1, 0, C, 1): pure chirp multiplication
    f = random_signal(6)
    m = LCTParams(1, 0, 0.7, 1)
    out = clct_forward(f, m)
    expect = phase_multiply(f, -0.7 * SPEC.squared_radius() / 2.0)
    assert rel_l2_error(out, expect) == 0.0


def test_scaling_branch_rejects_incompatible_d():
    f = random_signal(7)
    with pytest.raises(ResamplingUnsupportedError):
        clct_forward(f, LCTParams(2.5, 0, 1.0, 0.4))


def test_lct_convolve_delta_identity():
    f = random_signal(8)
    m = LCTParams(1, 2, 1, 3)
    delta = GridSignal.zero(SPEC, CTX)
    half = SPEC.samples_per_axis // 2
    delta.data[0, half, half] = 1.0 / SPEC.cell_weight("space")
    assert rel_l2_error(lct_convolve(f, delta, m), f) < 1e-13


def test_lct_convolve_reduces_to_plain_convolution():
    from clcst.cft import convolve

    f, g = gaussian(width=0.8), gaussian(width=1.3, center=0.4)
    m = LCTParams.cft_point()  # A = 0 kills the chirps
    assert rel_l2_error(lct_convolve(f, g, m), convolve(f, g)) == 0.0


@pytest.mark.parametrize("seed", [10, 11, 12])
def test_canonical_convolution_theorem(seed):
    rng = np.random.default_rng(seed)
    A, B, D = rng.uniform(0.5, 2.0, size=3)
    m = LCTParams(A, B, (A * D - 1.0) / B, D)  # solve C from AD - BC = 1
    mesh = SPEC.mesh()
    vals = rng.standard_normal() * np.exp(-np.sum((mesh - 0.3) ** 2, axis=0))
    vals += rng.standard_normal() * np.exp(-np.sum((mesh + 0.5) ** 2, axis=0) / 1.4)
    f = GridSignal.from_scalar(SPEC, CTX, vals)
    g = gaussian(width=0.9)
    lhs = clct_forward(lct_convolve(f, g, m), m)
    rhs = lct_convolution_theorem_rhs(f, g, m)
    assert rel_l2_error(lhs, rhs) < 1e-10
