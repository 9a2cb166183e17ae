"""Desk-scale property suites: every module invariant as a named check.

Each check reports the measured deviation against its tolerance; the CLI
`verify` subcommand renders these as JSON and exits nonzero on any failure.
"""

import warnings

import numpy as np

from .algebra import (
    Multivector,
    algebra,
    clifford_conjugate,
    scalar_part,
    transform_algebra,
)
from .cft import (
    cft_forward,
    cft_forward_direct,
    cft_inverse,
    convolution_theorem_rhs,
    convolve,
)
from .grid import (
    FREQUENCY,
    GridSignal,
    GridSpec,
    chirp_multiply,
    inner_product,
    norm_l2,
    rel_l2_error,
    sample,
)
from .lct import (
    LCTParams,
    clct_forward,
    clct_forward_direct,
    lct_convolution_theorem_rhs,
    lct_convolve,
)
from .stockwell import Rotation, ScalingMatrix, cst, cst_direct_point, cst_slice, window_family
from .transform import (
    admissibility_profile,
    clcst,
    clcst_direct_sum_slice,
    covariance_suite,
    isometry_ratio,
    marginal_spectrum,
    orthogonality_check,
    reconstruct_marginal,
    reconstruct_resolution,
    reproducing_kernel,
)
from .volume import tensor_u_list
from .windows import DOGWindow, GaussianWindow


def _check(name, measured, tolerance):
    measured = float(measured)
    return {
        "name": name,
        "measured": measured,
        "tolerance": float(tolerance),
        "passed": bool(measured <= tolerance),
    }


def _random_mv(ctx, rng):
    return Multivector(ctx, rng.standard_normal(ctx.blade_count))


def _random_signal(spec, ctx, rng):
    return GridSignal(spec, ctx, rng.standard_normal((ctx.blade_count,) + spec.shape))


def _gaussian(spec, ctx, rate=1.0, center=0.0):
    return sample(lambda x: np.exp(-rate * np.sum((x - center) ** 2, axis=0)), spec, ctx)


def suite_algebra():
    checks = []
    rng = np.random.default_rng(0)
    for n in (2, 3):
        ctx = algebra(n, -1)
        dev = 0.0
        for i in range(n):
            ei = Multivector.basis_vector(ctx, i)
            dev = max(dev, abs(scalar_part(ei * ei) + 1.0))
            for j in range(n):
                if i != j:
                    ej = Multivector.basis_vector(ctx, j)
                    dev = max(dev, np.max(np.abs((ei * ej + ej * ei).coeffs)))
        checks.append(_check("e_i e_j + e_j e_i = -2 delta_ij (n=%d)" % n, dev, 1e-14))
        blades = [Multivector.blade(ctx, k) for k in range(ctx.blade_count)]
        dev = max(
            np.max(np.abs(((a * b) * c - a * (b * c)).coeffs))
            for a in blades
            for b in blades
            for c in blades
        )
        checks.append(_check("blade associativity (n=%d)" % n, dev, 1e-14))
        dev = 0.0
        pos = 0.0
        for _ in range(10):
            a, b = _random_mv(ctx, rng), _random_mv(ctx, rng)
            lhs = clifford_conjugate(a * b)
            rhs = clifford_conjugate(b) * clifford_conjugate(a)
            dev = max(dev, np.max(np.abs((lhs - rhs).coeffs)))
            pos = max(pos, abs(scalar_part(a * clifford_conjugate(a)) - np.sum(a.coeffs**2)))
        checks.append(_check("conjugation anti-automorphism (n=%d)" % n, dev, 1e-12))
        checks.append(_check("positive definite scalar product (n=%d)" % n, pos, 1e-12))
    for n in (2, 3):
        ctx = transform_algebra(n)
        i_n = Multivector.pseudoscalar(ctx)
        checks.append(
            _check("pseudoscalar squares to -1 (n=%d)" % n, abs(scalar_part(i_n * i_n) + 1), 1e-15)
        )
        dev = 0.0
        for k in range(ctx.blade_count):
            blade = Multivector.blade(ctx, k)
            comm = (i_n * blade - blade * i_n).coeffs
            anti = (i_n * blade + blade * i_n).coeffs
            expected_comm = n == 3 or ctx.grades[k] % 2 == 0
            dev = max(dev, np.max(np.abs(comm if expected_comm else anti)))
        checks.append(_check("pseudoscalar commutation pattern (n=%d)" % n, dev, 1e-15))
    return checks


def suite_cft():
    checks = []
    rng = np.random.default_rng(1)
    spec = GridSpec(2, 6.0, 64)
    ctx = transform_algebra(2)
    f = _random_signal(spec, ctx, rng)
    checks.append(
        _check("forward/inverse round trip (n=2)", rel_l2_error(cft_inverse(cft_forward(f)), f), 1e-12)
    )
    small = GridSpec(2, 4.0, 16)
    fs = _random_signal(small, ctx, rng)
    checks.append(
        _check("FFT path vs direct sum", rel_l2_error(cft_forward(fs), cft_forward_direct(fs)), 1e-12)
    )
    g = _gaussian(spec, ctx, rate=0.5)
    expected = sample(lambda w: np.exp(-np.sum(w**2, axis=0) / 2), spec, ctx, domain=FREQUENCY)
    checks.append(_check("unit Gaussian fixed point", rel_l2_error(cft_forward(g), expected), 1e-8))
    dev = 0.0
    for _ in range(5):
        a = _random_signal(spec, ctx, rng)
        b = _random_signal(spec, ctx, rng)
        lhs = scalar_part(inner_product(a, b))
        rhs = scalar_part(inner_product(cft_forward(a), cft_forward(b)))
        dev = max(dev, abs(lhs - rhs) / max(abs(lhs), 1.0))
    checks.append(_check("Plancherel scalar identity (n=2)", dev, 1e-10))
    spec3 = GridSpec(3, 4.0, 16)
    ctx3 = transform_algebra(3)
    a3, b3 = _random_signal(spec3, ctx3, rng), _random_signal(spec3, ctx3, rng)
    lhs = inner_product(a3, b3)
    rhs = inner_product(cft_forward(a3), cft_forward(b3))
    scale = max(np.max(np.abs(lhs.coeffs)), 1.0)
    checks.append(
        _check("Plancherel full multivector (n=3)", np.max(np.abs(lhs.coeffs - rhs.coeffs)) / scale, 1e-10)
    )
    s1 = _gaussian(spec, ctx, rate=1.0, center=0.5)
    s2 = _gaussian(spec, ctx, rate=0.7)
    checks.append(
        _check(
            "classical convolution theorem",
            rel_l2_error(cft_forward(convolve(s1, s2)), convolution_theorem_rhs(s1, s2)),
            1e-10,
        )
    )
    even = _gaussian(spec, ctx)
    F = cft_forward(even)
    checks.append(
        _check(
            "even real signal has cosine spectrum",
            np.max(np.abs(F.data[ctx.full_mask])) / np.max(np.abs(F.data[0])),
            1e-13,
        )
    )
    return checks


def suite_clct():
    checks = []
    rng = np.random.default_rng(2)
    spec = GridSpec(2, 6.0, 32)
    ctx = transform_algebra(2)
    f = _random_signal(spec, ctx, rng)
    checks.append(
        _check(
            "M=(0,1,-1,0) reduces to CFT",
            rel_l2_error(clct_forward(f, LCTParams.cft_point()), cft_forward(f)),
            1e-12,
        )
    )
    dev = 0.0
    for _ in range(3):
        A, B, D = rng.uniform(0.5, 2.0, size=3)
        m = LCTParams(A, B, (A * D - 1.0) / B, D)
        g = _random_signal(spec, ctx, rng)
        dev = max(dev, rel_l2_error(clct_forward(g, m), clct_forward_direct(g, m)))
    checks.append(_check("chirp-FFT-chirp vs direct quadrature", dev, 1e-10))
    dev = 0.0
    for _ in range(3):
        A, B, D = rng.uniform(0.5, 2.0, size=3)
        m = LCTParams(A, B, (A * D - 1.0) / B, D)
        fg = _gaussian(spec, ctx, rate=0.8, center=0.3)
        gg = _gaussian(spec, ctx, rate=1.1)
        lhs = clct_forward(lct_convolve(fg, gg, m), m)
        rhs = lct_convolution_theorem_rhs(fg, gg, m)
        dev = max(dev, rel_l2_error(lhs, rhs))
    checks.append(_check("canonical convolution theorem", dev, 1e-10))
    return checks


def suite_cst():
    checks = []
    rng = np.random.default_rng(3)
    spec = GridSpec(2, 6.0, 64)
    ctx = transform_algebra(2)
    f = _gaussian(spec, ctx, center=0.4)
    psi = GaussianWindow(2, sigma=1.0)
    dev = 0.0
    for _ in range(3):
        u = rng.uniform(1.0, 3.0, size=2) * rng.choice([-1.0, 1.0], size=2)
        theta = rng.uniform(0, np.pi / 2)
        scaling, rotation = ScalingMatrix(u), Rotation(theta)
        slice_ = cst_slice(f, psi, scaling, rotation)
        idx = tuple(rng.integers(8, 56, size=2))
        b = np.array([spec.axis()[idx[0]], spec.axis()[idx[1]]])
        direct = cst_direct_point(f, psi, b, scaling, rotation)
        dev = max(
            dev,
            np.max(np.abs(direct.coeffs - slice_.value_at(idx).coeffs))
            / max(np.max(np.abs(slice_.data)), 1e-30),
        )
    checks.append(_check("FFT slice vs direct quadrature", dev, 1e-10))
    scaling = ScalingMatrix([1.5, -2.0])
    s0 = cst_slice(f, psi, scaling, Rotation(0.0))
    s2 = cst_slice(f, psi, scaling, Rotation(np.pi / 2))
    checks.append(_check("radial window rotation invariance", rel_l2_error(s2, s0), 1e-10))
    wf = window_family(psi, np.zeros(2), ScalingMatrix([2.0, 3.0]), Rotation(0.0), spec, ctx)
    base = sample(lambda x: psi.evaluate(x), spec, ctx)
    ratio = norm_l2(wf) / (np.sqrt(6.0) * norm_l2(base))
    checks.append(_check("window family norm scales as sqrt|det A_u|", abs(ratio - 1.0), 1e-6))
    return checks


def suite_clcst():
    checks = []
    rng = np.random.default_rng(4)
    spec = GridSpec(2, 6.0, 32)
    ctx = transform_algebra(2)
    mesh = spec.mesh()
    f = GridSignal.from_scalar(
        spec,
        ctx,
        np.exp(-np.sum((mesh - 0.4) ** 2, axis=0)) + 0.5 * np.exp(-np.sum((mesh + 0.6) ** 2, axis=0) / 1.2),
    )
    psi = GaussianWindow(2, sigma=1.0)
    m = LCTParams(1, 2, 1, 3)
    dw = spec.dw
    u_list = np.array([[2 * dw, 3 * dw], [4 * dw, -2 * dw], [-3 * dw, 2 * dw]])
    thetas = [0.0, np.pi / 4, np.pi / 2]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vd = clcst(f, psi, m, u_list, thetas, path="direct")
        vt = clcst(f, psi, m, u_list, thetas, path="three_step")
        vs = clcst(f, psi, m, u_list, thetas, path="spectral")
        checks.append(_check("direct vs three-step path", vd.rel_max_difference(vt), 1e-12))
        checks.append(_check("direct vs spectral path", vd.rel_max_difference(vs), 1e-8))
        v0 = clcst(f, psi, LCTParams.cft_point(), u_list, thetas, path="three_step")
        vc = cst(f, psi, u_list, thetas)
        checks.append(_check("degeneration to CST at M=(0,1,-1,0)", v0.rel_max_difference(vc), 1e-12))
        oracle = clcst_direct_sum_slice(f, psi, m, ScalingMatrix(u_list[0]), Rotation(thetas[1]))
        vd01 = vd.slice(0, 1)
        checks.append(_check("FFT path vs naive summation oracle", rel_l2_error(vd01, oracle), 1e-10))
        g = GridSignal.from_scalar(spec, ctx, np.exp(-np.sum((mesh + 0.2) ** 2, axis=0) * 0.9))
        lhs, rhs = orthogonality_check(f, g, psi, m, ScalingMatrix([2 * dw, -3 * dw]), Rotation(0.6))
        dev = abs(scalar_part(lhs) - scalar_part(rhs)) / max(abs(scalar_part(lhs)), 1e-30)
        checks.append(_check("orthogonality scalar identity", dev, 1e-8))
        chirped = chirp_multiply(f, m.chirp_rate, +1)
        checks.append(
            _check(
                "chirp preserves the L2 norm",
                abs(norm_l2(chirped) - norm_l2(f)) / norm_l2(f),
                1e-12,
            )
        )
        prof, stats = admissibility_profile(psi, m, spec, ctx, u_list, thetas)
        ratio = isometry_ratio(vd, f, m)
        lo = stats["min"] / stats["mean"] - 1.0
        hi = stats["max"] / stats["mean"] - 1.0
        dev_iso = 0.0 if lo <= ratio / stats["mean"] - 1.0 <= hi else abs(ratio / stats["mean"] - 1.0)
        checks.append(_check("isometry ratio within admissibility spread", dev_iso, stats["relative_variation"] + 1e-12))
        spec128 = GridSpec(2, 6.0, 128)
        fsm = _gaussian(spec128, ctx, rate=2.0)
        rep = covariance_suite(
            fsm,
            GaussianWindow(2, sigma=0.6),
            m,
            np.array([[4 * dw, 6 * dw], [8 * dw, -4 * dw]]),
            thetas,
            shift=[spec128.dx, 0.0],
            dilation=2.0,
            dilation_b_radius=1.1,
        )
        for key, value in rep.items():
            checks.append(_check("covariance: %s" % key, value, 1e-10))
    return checks


def suite_reconstruction():
    checks = []
    ctx = transform_algebra(2)
    spec = GridSpec(2, 6.0, 32)
    dw = spec.dw
    m = LCTParams(1, 2, 1, 3)
    half = spec.samples_per_axis // 2
    k = np.arange(-half, half)
    knz = k[k != 0]
    f = _gaussian(spec, ctx, rate=1.0)
    psi = GaussianWindow(2, sigma=0.75).normalize_unit_integral()
    u_list = tensor_u_list([knz * dw, knz * dw])
    vol = clcst(f, psi, m, u_list, [0.0], path="three_step")
    spectrum, _ = marginal_spectrum(vol, m, 0.0)
    P = cft_forward(chirp_multiply(f, m.chirp_rate, +1))
    idx = (half + 2, half + 3)
    dev = np.max(
        np.abs(spectrum.data[(slice(None),) + idx] - P.data[(slice(None),) + idx])
    ) / np.max(np.abs(P.data))
    checks.append(_check("marginal b-sum equals cft(f chirp)", dev, 1e-6))
    fhat, _ = reconstruct_marginal(vol, m, 0.0)
    checks.append(_check("marginal reconstruction L2 error", rel_l2_error(fhat, f), 1e-3))

    fres = _gaussian(spec, ctx, rate=0.5)
    psi_res = GaussianWindow(2, sigma=1.0)
    step = 2 * dw
    vals = np.arange(step, 28 * dw + 1e-9, step)
    axis = np.concatenate([-vals[::-1], vals])
    u_res = tensor_u_list([axis, axis])
    prof, stats = admissibility_profile(psi_res, m, spec, ctx, u_res, [0.0])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vol_res = clcst(fres, psi_res, m, u_res, [0.0], path="three_step")
        rec = reconstruct_resolution(vol_res, psi_res, m, stats["mean"])
    checks.append(_check("resolution-of-identity L2 error", rel_l2_error(rec, fres), 0.05))
    checks.append(
        _check("admissibility profile relative variation", stats["relative_variation"], 0.25)
    )
    rng = np.random.default_rng(6)
    from .volume import default_u_list

    u_def = default_u_list(spec)
    prof_d, stats_d = admissibility_profile(psi_res, m, spec, ctx, u_def, [0.0, np.pi / 4, np.pi / 2])
    worst = 0.0
    for _ in range(20):
        b1, b2 = rng.uniform(-4, 4, size=(2, 2))
        u1, u2 = u_def[rng.integers(len(u_def), size=2)]
        t1, t2 = rng.choice([0.0, np.pi / 4, np.pi / 2], size=2)
        K, bound = reproducing_kernel(
            psi_res, m, spec, ctx, stats_d["mean"], (b1, u1, t1), (b2, u2, t2)
        )
        worst = max(worst, K.norm() / bound)
    checks.append(_check("reproducing kernel bound (sampled pairs)", worst, 1.0))
    return checks


def example1_closed_form(u1, u2, params):
    """Closed-form transform value at b = 0, theta = pi/2 for the worked case.

    Assembled from int exp(-a x^2 - i beta x) dx = sqrt(pi/a) exp(-beta^2/(4a)),
    Re a > 0, with the two DOG lobes contributing
    a = 1 + 2 u_k^2 - i A/(2B) and a = 1 + u_k^2/2 - i A/(2B).
    """
    import cmath

    chi = params.A / (2.0 * params.B)

    def gauss_int(a, beta):
        return cmath.sqrt(cmath.pi / a) * cmath.exp(-(beta**2) / (4.0 * a))

    first = (
        (2.0 * abs(u1 * u2) / np.pi)
        * gauss_int(1.0 + 2.0 * u1**2 - 1j * chi, u1)
        * gauss_int(1.0 + 2.0 * u2**2 - 1j * chi, u2)
    )
    second = (
        (abs(u1 * u2) / (2.0 * np.pi))
        * gauss_int(1.0 + u1**2 / 2.0 - 1j * chi, u1)
        * gauss_int(1.0 + u2**2 / 2.0 - 1j * chi, u2)
    )
    return first - second


def suite_example1():
    checks = []
    ctx = transform_algebra(2)
    spec = GridSpec(2, 6.0, 64)
    f = sample(lambda x: np.exp(-np.sum(x**2, axis=0)), spec, ctx)
    psi = DOGWindow(2, lam=0.5)
    m = LCTParams(1, 2, 1, 3)
    dw = spec.dw
    uvals = np.array([-2 * dw, -dw, dw, 2 * dw, 3 * dw])
    u_list = np.array([[a, b] for a in uvals for b in uvals])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vol = clcst(f, psi, m, u_list, [np.pi / 2], path="three_step")
    half = spec.samples_per_axis // 2
    worst = 0.0
    for i, (u1, u2) in enumerate(u_list):
        numeric = vol.values[:, half, half, i, 0]
        z = example1_closed_form(u1, u2, m)
        exact = np.zeros(ctx.blade_count)
        exact[0] = z.real
        exact[ctx.full_mask] = z.imag
        worst = max(worst, np.max(np.abs(numeric - exact)) / max(abs(z), 1e-30))
    checks.append(_check("closed-form oracle over 5x5 u grid", worst, 1e-6))
    return checks


SUITES = {
    "algebra": suite_algebra,
    "cft": suite_cft,
    "clct": suite_clct,
    "cst": suite_cst,
    "clcst": suite_clcst,
    "reconstruction": suite_reconstruction,
    "example1": suite_example1,
}


def run_suites(names):
    if "all" in names:
        names = list(SUITES)
    results = {}
    for name in names:
        if name not in SUITES:
            raise KeyError("unknown suite %r (choose from %s)" % (name, sorted(SUITES)))
        results[name] = SUITES[name]()
    all_passed = all(c["passed"] for checks in results.values() for c in checks)
    return results, all_passed
