"""Built-in verification suites for the command line.

Each suite re-derives one of the package's defining properties at run
time: the bundled example states reproduce their published invariant
values, randomized decomposition mixings and local-unitary transforms
leave every invariant unchanged, zero-padding shifts the determinant
polynomial by a power of lambda, and the 2x2x2 hyperdeterminant obeys its
group covariance. The quick profile uses 10 random trials per property,
the full profile 100 and additionally the padding-law and covariance
suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equivalence import fingerprint, screen
from .invariants import (
    cayley_det_222,
    f_invariants,
    gram_matrix,
    hypermatrix,
    invariant_M,
    invariant_N,
    lambda_poly,
)
from .linalg import haar_unitary_from_rng
from .states import (
    apply_local_unitary,
    apply_local_unitary_density,
    eigen_decomposition,
    mix_decomposition,
    pad_with_zeros,
    random_density,
    random_local_unitaries,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str = "") -> SuiteResult:
    return SuiteResult(name=name, passed=bool(passed), detail=detail)


def _builtin_states():
    from .fixtures import load_fixture

    return {key: load_fixture(key) for key in ("rho1", "rho2", "sigma1", "sigma2")}


def _suite_example1(trials: int, seed: int) -> list[SuiteResult]:
    states = _builtin_states()
    out = []
    fp1 = fingerprint(states["rho1"])
    fp2 = fingerprint(states["rho2"])
    out.append(
        _result(
            "Example1: N(rho1)=1/256",
            abs(fp1.N_value - 1.0 / 256.0) < 1e-12,
            f"got {fp1.N_value}",
        )
    )
    out.append(
        _result("Example1: N(rho2)=0", abs(fp2.N_value) < 1e-12, f"got {fp2.N_value}")
    )
    out.append(
        _result(
            "Example1: F invariants agree on the pair",
            np.abs(fp1.F - fp2.F).max() < 1e-10,
        )
    )
    report = screen(states["rho1"], states["rho2"])
    out.append(
        _result(
            "Example1: screen is NotEquivalent with witness invariant_N",
            report.verdict == "NotEquivalent" and report.witness == "invariant_N",
            f"verdict={report.verdict}, witness={report.witness}",
        )
    )
    ky_target = 1.0 / math.sqrt(2.0)
    out.append(
        _result(
            "Example1: realignment Ky Fan norm = 1/sqrt(2) for both",
            abs(fp1.kyfan - ky_target) < 1e-10 and abs(fp2.kyfan - ky_target) < 1e-10,
            f"got {fp1.kyfan}, {fp2.kyfan}",
        )
    )
    return out


def _suite_example2(trials: int, seed: int) -> list[SuiteResult]:
    states = _builtin_states()
    out = []
    fp1 = fingerprint(states["sigma1"])
    fp2 = fingerprint(states["sigma2"])
    out.append(
        _result(
            "Example2: N(sigma1)=1/6561",
            abs(fp1.N_value - 1.0 / 6561.0) < 1e-12,
            f"got {fp1.N_value}",
        )
    )
    out.append(
        _result("Example2: N(sigma2)=0", abs(fp2.N_value) < 1e-12, f"got {fp2.N_value}")
    )
    out.append(
        _result(
            "Example2: F invariants agree on the pair",
            np.abs(fp1.F - fp2.F).max() < 1e-10,
        )
    )
    report = screen(states["sigma1"], states["sigma2"])
    out.append(
        _result(
            "Example2: screen separates the pair",
            report.verdict == "NotEquivalent",
            f"verdict={report.verdict}, witness={report.witness}",
        )
    )
    return out


def _random_state(rng: np.random.Generator, dims, rank: int):
    return random_density(dims, rank, seed=int(rng.integers(2**62)))


def _suite_mixing_independence(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        dims = (2, 2) if rng.integers(2) else (2, 3)
        rank = int(rng.integers(1, math.prod(dims) // 2 + 2))
        rho = _random_state(rng, dims, rank)
        d = eigen_decomposition(rho)
        base = f_invariants(gram_matrix(d)).F
        for _ in range(5):
            u = haar_unitary_from_rng(len(d), rng)
            mixed = mix_decomposition(d, u)
            dev = np.abs(f_invariants(gram_matrix(mixed)).F - base).max()
            worst = max(worst, float(dev))
    return [
        _result(
            "GramSpectrum: F invariants independent of decomposition mixing",
            worst < 1e-9,
            f"max deviation {worst:.2e}",
        )
    ]


def _suite_lu_invariance(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    worst_gram = 0.0
    worst_f = 0.0
    for _ in range(trials):
        dims = (2, 2) if rng.integers(2) else (2, 3)
        rank = int(rng.integers(1, math.prod(dims) // 2 + 2))
        rho = _random_state(rng, dims, rank)
        d = eigen_decomposition(rho)
        p = haar_unitary_from_rng(dims[0], rng)
        q = haar_unitary_from_rng(dims[1], rng)
        moved = apply_local_unitary(d, p, q)
        worst_gram = max(
            worst_gram,
            float(np.abs(gram_matrix(moved).omega - gram_matrix(d).omega).max()),
        )
        worst_f = max(
            worst_f,
            float(
                np.abs(
                    f_invariants(gram_matrix(moved)).F - f_invariants(gram_matrix(d)).F
                ).max()
            ),
        )
    return [
        _result(
            "GramSpectrum: Gram matrix entrywise invariant under local unitaries",
            worst_gram < 1e-10,
            f"max deviation {worst_gram:.2e}",
        ),
        _result(
            "GramSpectrum: F invariants match under local unitaries",
            worst_f < 1e-9,
            f"max deviation {worst_f:.2e}",
        ),
    ]


def _rank2_invariants(d):
    h = hypermatrix(d, 2)
    return np.concatenate(
        [
            [invariant_N(h), invariant_M(h)],
            lambda_poly(d, 1, "det").coeffs,
            lambda_poly(d, 2, "N").coeffs,
            lambda_poly(d, 2, "M").coeffs,
        ]
    )


def _suite_degree4_invariance(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    worst_mix = 0.0
    worst_lu = 0.0
    for _ in range(trials):
        rho = _random_state(rng, (2, 2), 2)
        d = eigen_decomposition(rho)
        base = _rank2_invariants(d)
        u = haar_unitary_from_rng(2, rng)
        worst_mix = max(
            worst_mix,
            float(np.abs(_rank2_invariants(mix_decomposition(d, u)) - base).max()),
        )
        p = haar_unitary_from_rng(2, rng)
        q = haar_unitary_from_rng(2, rng)
        worst_lu = max(
            worst_lu,
            float(np.abs(_rank2_invariants(apply_local_unitary(d, p, q)) - base).max()),
        )
    return [
        _result(
            "Degree4: N, M and lambda coefficients invariant under mixing",
            worst_mix < 1e-8,
            f"max deviation {worst_mix:.2e}",
        ),
        _result(
            "Degree4: N, M and lambda coefficients invariant under local unitaries",
            worst_lu < 1e-8,
            f"max deviation {worst_lu:.2e}",
        ),
    ]


def _suite_padding_law(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        dims = (2, 2) if rng.integers(2) else (2, 3)
        rank = int(rng.integers(1, 5))
        rho = _random_state(rng, dims, rank)
        d = eigen_decomposition(rho)
        base = lambda_poly(d, 1, "det")
        for j in (len(d) + 1, len(d) + 2):
            padded = lambda_poly(pad_with_zeros(d, j), 1, "det")
            expected = base.shifted(j - len(d))
            width = max(len(padded.coeffs), len(expected.coeffs))
            pa = np.zeros(width, dtype=complex)
            pb = np.zeros(width, dtype=complex)
            pa[: len(padded.coeffs)] = padded.coeffs
            pb[: len(expected.coeffs)] = expected.coeffs
            worst = max(worst, float(np.abs(pa - pb).max()))
    return [
        _result(
            "Padding: det polynomial of zero-padded decomposition is lambda^(J-r) times base",
            worst < 1e-9,
            f"max deviation {worst:.2e}",
        )
    ]


def _suite_cayley(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    worst_agreement = 0.0
    worst_cov = 0.0
    worst_product = 0.0
    for _ in range(trials):
        t = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
        expanded = cayley_det_222(t)
        compact = cayley_det_222(t, method="compact")
        worst_agreement = max(
            worst_agreement, abs(expanded - compact) / max(abs(expanded), 1e-30)
        )
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        for slot, spec in enumerate(("ia,ajk->ijk", "ja,iak->ijk", "ka,ija->ijk")):
            acted = np.einsum(spec, b, t)
            scale = np.linalg.det(b) ** 2
            worst_cov = max(
                worst_cov,
                abs(cayley_det_222(acted) - scale * expanded) / max(abs(scale * expanded), 1e-30),
            )
        u, v, w = (rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(3))
        # unit product vectors keep the tensor O(1) so the absolute
        # vanishing threshold is meaningful
        product = np.einsum("i,j,k->ijk", u / np.linalg.norm(u), v / np.linalg.norm(v), w / np.linalg.norm(w))
        worst_product = max(worst_product, abs(cayley_det_222(product)))
    return [
        _result(
            "Cayley: 12-term expansion agrees with Levi-Civita contraction",
            worst_agreement < 1e-12,
            f"max relative deviation {worst_agreement:.2e}",
        ),
        _result(
            "Cayley: one-slot action scales the value by det(B)^2",
            worst_cov < 1e-8,
            f"max relative deviation {worst_cov:.2e}",
        ),
        _result(
            "Cayley: vanishes on product tensors",
            worst_product < 1e-12,
            f"max |value| {worst_product:.2e}",
        ),
    ]


def _suite_degeneracy(trials: int, seed: int) -> list[SuiteResult]:
    states = _builtin_states()
    rho1 = states["rho1"]
    rng = np.random.default_rng(seed)
    base = fingerprint(rho1)
    worst = 0.0
    for _ in range(max(trials, 2)):
        d = eigen_decomposition(rho1)
        u = haar_unitary_from_rng(len(d), rng)
        rotated = mix_decomposition(d, u)
        f = f_invariants(gram_matrix(rotated)).F
        h = hypermatrix(rotated, 2)
        worst = max(
            worst,
            float(np.abs(f - base.F).max()),
            abs(invariant_N(h) - base.N_value),
            abs(invariant_M(h) - base.M_value),
        )
    return [
        _result(
            "Degeneracy: invariants stable across degenerate eigenbases",
            worst < 1e-9,
            f"max deviation {worst:.2e}",
        )
    ]


def _suite_soundness(trials: int, seed: int) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    false_positives = 0
    for _ in range(trials):
        dims = (2, 2) if rng.integers(2) else (2, 3)
        rank = int(rng.integers(1, 4))
        rho = _random_state(rng, dims, rank)
        locals_ = random_local_unitaries(dims, seed=int(rng.integers(2**62)))
        moved = apply_local_unitary_density(rho, locals_)
        if screen(rho, moved).verdict != "Inconclusive":
            false_positives += 1
    return [
        _result(
            "Soundness: locally-unitary-equivalent pairs are never flagged",
            false_positives == 0,
            f"{false_positives} false positives in {trials} trials",
        )
    ]


_SUITES = [
    (_suite_example1, False),
    (_suite_example2, False),
    (_suite_mixing_independence, False),
    (_suite_lu_invariance, False),
    (_suite_degree4_invariance, False),
    (_suite_degeneracy, False),
    (_suite_soundness, False),
    (_suite_padding_law, True),
    (_suite_cayley, True),
]


def run_selftest(full: bool = False, seed: int = 0) -> list[SuiteResult]:
    """Run the embedded suites; full mode adds the padding and covariance
    suites and raises the trial count from 10 to 100."""
    trials = 100 if full else 10
    results: list[SuiteResult] = []
    for i, (suite, full_only) in enumerate(_SUITES):
        if full_only and not full:
            continue
        results.extend(suite(trials, seed + 7919 * i))
    return results
