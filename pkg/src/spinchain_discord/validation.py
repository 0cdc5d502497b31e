"""Self-checks: oracle agreement, property batches and the acceptance gates.

Every check returns a :class:`CheckResult`; a suite is a list of them. Checks
never raise on a failed comparison, only record it.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np
from scipy.optimize import minimize_scalar

from .discord import discord
from .ed_oracle import CouplingTable, build_and_ground, reduced_pair, verify_separable_ground
from .jw_chain import ChainSpec, factorizing_field, pair_densities, parity_crossings, sector_energies
from .lmg import lmg_pair_density, lmg_sectors
from .mixture import discord_closed_form, discord_closed_form_coherent, mixture_state
from .pair_state import XState, concurrence, eof, reduce, xstate_from_elements
from .sweep import GRID_OFFSET

SUITES = ("oracle", "invariants", "acceptance")
SEED = 20100907


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    time_limit: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f} s)"


def _timed(name: str, time_limit: float | None, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    passed, detail = body()
    seconds = time.perf_counter() - start
    if time_limit is not None and seconds > time_limit:
        passed = False
        detail += f"; runtime {seconds:.2f} s exceeds {time_limit} s"
    return CheckResult(name, bool(passed), detail, seconds, time_limit)


def _max_diff(x: XState, y: XState) -> float:
    return float(np.max(np.abs(np.subtract(x.elements(), y.elements()))))


# -- oracle sweeps -----------------------------------------------------------


def oracle_fields(n: int, chi: float, count: int = 21, b_max: float = 1.5, min_gap: float = 1e-6) -> list[float]:
    """``count`` fields spanning ``[0, b_max]`` (units of ``J_x = 1``) kept off
    parity crossings: any field whose sector gap is below ``min_gap`` is
    nudged upward until it is not."""
    spec = ChainSpec.from_chi(n, 1.0, chi, 0.0)
    out = []
    for b in np.linspace(GRID_OFFSET, b_max - GRID_OFFSET, count):
        b = float(b)
        while True:
            plus, minus = sector_energies(spec.with_field(b))
            if abs(plus - minus) >= min_gap:
                break
            b += 1e-4
        out.append(b)
    return out


@dataclass(frozen=True)
class OracleComparison:
    model: str
    n: int
    chi: float
    b: float
    max_diff: float
    monogamy: float  # sum over partners j of C(0, j)**2 in the ground state


def compare_nn(n: int, chi: float, b: float) -> OracleComparison:
    """Free-fermion versus brute-force pair densities, both parity sectors."""
    spec = ChainSpec.from_chi(n, 1.0, chi, b)
    ed = build_and_ground(CouplingTable.nearest_neighbor(n, 1.0, chi, b))
    seps = range(1, n // 2 + 1)
    worst = 0.0
    for parity in (1, -1):
        jw = pair_densities(spec, seps, parity)
        vec = ed.sector_state(parity)
        for L in seps:
            worst = max(worst, _max_diff(jw[L], reduced_pair(vec, 0, L)))
    ground = pair_densities(spec, seps, ed.global_parity)
    mono = sum(concurrence(ground[min(j, n - j)])[0] ** 2 for j in range(1, n))
    return OracleComparison("nn", n, chi, b, worst, mono)


def compare_lmg(n: int, chi: float, b: float) -> OracleComparison:
    """Collective-spin versus brute-force pair densities, both parity sectors."""
    sectors = lmg_sectors(n, 1.0, chi, b)
    ed = build_and_ground(CouplingTable.fully_connected(n, 1.0, chi, b))
    worst = 0.0
    for parity in (1, -1):
        state = lmg_pair_density(sectors[parity])
        vec = ed.sector_state(parity)
        for j in (1, n // 2, n - 1):
            worst = max(worst, _max_diff(state, reduced_pair(vec, 0, j)))
        worst = max(worst, abs(sectors[parity].energy - (ed.energy_plus if parity == 1 else ed.energy_minus)))
    ground = lmg_pair_density(sectors[ed.global_parity])
    mono = (n - 1) * concurrence(ground)[0] ** 2
    return OracleComparison("lmg", n, chi, b, worst, mono)


def oracle_sweep(sizes=(4, 6, 8, 10), chis=(0.25, 0.5, 0.75), count: int = 21) -> Iterator[OracleComparison]:
    for n in sizes:
        for chi in chis:
            for b in oracle_fields(n, chi, count):
                yield compare_nn(n, chi, b)
                yield compare_lmg(n, chi, b)


def _oracle_check(sizes, chis, count, tol: float = 1e-10) -> tuple[bool, str, list[OracleComparison]]:
    rows = list(oracle_sweep(sizes, chis, count))
    nn = max(r.max_diff for r in rows if r.model == "nn")
    lmg = max(r.max_diff for r in rows if r.model == "lmg")
    ok = nn < tol and lmg < tol
    return ok, f"{len(rows)} comparisons, max |jw-ED|={nn:.2e}, max |lmg-ED|={lmg:.2e} (tol {tol:g})", rows


# -- property batches --------------------------------------------------------


def random_xstate(rng: np.random.Generator) -> XState:
    """Uniformly random populations with coherences anywhere in the allowed disc."""
    a, b, c, cp = rng.dirichlet(np.ones(4))
    alpha = rng.uniform(-1.0, 1.0) * math.sqrt(a * b)
    beta = rng.uniform(-1.0, 1.0) * math.sqrt(c * cp)
    return xstate_from_elements(a, b, c, cp, alpha, beta)


def measured_unmeasured_marginal(state: XState, gamma: float, phi: float) -> np.ndarray:
    """Diagonal of the first-spin density after a projective measurement on
    the second spin along ``(gamma, phi)``, built from dense 4x4 matrices."""
    rho = state.matrix()
    axis = np.array([math.cos(phi) * math.sin(gamma), math.sin(phi) * math.sin(gamma), math.cos(gamma)])
    pauli = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    sigma = sum(k * p for k, p in zip(axis, pauli))
    post = np.zeros((4, 4), dtype=complex)
    for sign in (1, -1):
        proj = np.kron(np.eye(2), 0.5 * (np.eye(2) + sign * sigma))
        post += proj @ rho @ proj
    first = np.einsum("ikjk->ij", post.reshape(2, 2, 2, 2))
    return np.real(np.diag(first))


def discord_bounds_batch(count: int, seed: int = SEED) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst_neg, worst_excess = 0.0, -math.inf
    for _ in range(count):
        res = discord(random_xstate(rng))
        worst_neg = min(worst_neg, res.discord)
        worst_excess = max(worst_excess, res.discord - res.mutual_information)
    ok = worst_neg >= 0.0 and worst_excess <= 1e-12
    return ok, f"{count} states, min D={worst_neg:.3e}, max D-I={worst_excess:.3e}"


def marginal_invariance_batch(count: int, seed: int = SEED + 1) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        state = random_xstate(rng)
        gamma, phi = rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi)
        after = measured_unmeasured_marginal(state, gamma, phi)
        worst = max(worst, float(np.max(np.abs(after - reduce(state, "first").probabilities()))))
    return worst < 1e-12, f"{count} states, max marginal change {worst:.2e}"


def _monogamy(rows: list[OracleComparison]) -> tuple[bool, str]:
    top = max(r.monogamy for r in rows)
    return top <= 1.0 + 1e-12, f"{len(rows)} ground states, max sum C^2={top:.6f}"


# -- acceptance gates --------------------------------------------------------


def _acc1() -> tuple[bool, str]:
    res = minimize_scalar(lambda t: -discord_closed_form(t), bounds=(0.1, 1.5), method="bounded", options={"xatol": 1e-10})
    theta_m, d_max = float(res.x), -float(res.fun)
    target = 1.15 * math.pi / 4
    ok = abs(theta_m - target) <= 0.02 and abs(d_max - 0.15) <= 0.005
    return ok, f"theta_m={theta_m:.5f} (target {target:.5f}+-0.02), D_max={d_max:.6f} (0.15+-0.005)"


def _acc2() -> tuple[bool, str]:
    theta = 0.25 * math.pi
    closed = discord_closed_form(theta)
    numeric = discord(mixture_state(theta)).discord
    ok = abs(closed - 0.145) <= 0.003 and abs(closed - numeric) <= 1e-9
    return ok, f"closed form {closed:.10f}, minimizer {numeric:.10f}, |diff|={abs(closed - numeric):.1e}"


def _acc3() -> tuple[bool, str]:
    n, chi = 10, 0.5
    bs = factorizing_field(ChainSpec.from_chi(n, 1.0, chi, 0.0))
    theta = math.acos(bs)
    parts, ok = [], True
    for delta, expected, label in ((-1e-6, 0.153, "D-"), (1e-6, 0.137, "D+")):
        states = pair_densities(ChainSpec.from_chi(n, 1.0, chi, bs + delta), range(1, n // 2 + 1))
        values = [discord(s).discord for s in states.values()]
        eps = math.copysign(math.cos(theta) ** (n - 2), delta)
        model = discord_closed_form_coherent(theta, eps)
        dev = max(abs(v - model) for v in values)
        ok &= all(abs(v - expected) <= 0.002 for v in values) and dev <= 1e-6
        parts.append(f"{label}={values[0]:.6f} (mixture {model:.6f}, max dev over L {dev:.1e})")
    return ok, ", ".join(parts)


def _acc5() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 5)
    worst_at, least_off = 0.0, math.inf
    for k in range(20):
        chi = float(rng.uniform(0.1, 0.9))
        table = CouplingTable.random_common_anisotropy(8, chi, rng, scale=rng.uniform(0.5, 2.0), jz_fraction=0.3 * (k % 2))
        bs = factorizing_field(table.jx[0], table.jy[0], table.jz[0])
        worst_at = max(worst_at, verify_separable_ground(table.with_field(bs)))
        least_off = min(least_off, verify_separable_ground(table.with_field(1.1 * bs)))
    ok = worst_at < 1e-10 and least_off > 1e-4
    return ok, f"20 tables n=8: max residual at B_s {worst_at:.2e}, min residual at 1.1 B_s {least_off:.2e}"


def _acc6() -> tuple[bool, str]:
    n = 100
    bs = factorizing_field(ChainSpec.from_chi(n, 1.0, 0.5, 0.0))
    states = pair_densities(ChainSpec.from_chi(n, 1.0, 0.5, bs + 1e-6), range(1, 51))
    values = np.array([discord(s).discord for s in states.values()])
    spread, centre = float(np.ptp(values)), float(np.median(values))
    ok = spread < 1e-6 and abs(centre - 0.145) <= 0.003
    return ok, f"L=1..50 spread {spread:.2e}, central D={centre:.6f}"


def _acc7() -> tuple[bool, str]:
    spec = ChainSpec.from_chi(10, 1.0, 0.5, 0.0)
    roots = parity_crossings(spec, factorizing_field(spec))
    return len(roots) == 5, f"{len(roots)} parity changes at B=" + ", ".join(f"{r:.5f}" for r in roots)


def strong_field_prediction(jx: float, jy: float, b: float) -> tuple[float, float]:
    """Leading strong-field discord ``eta^2 (log2(1/eta^2) + log2(e) - 2)``
    and entanglement of formation ``eta^2 (log2(1/eta^2) + log2(e))`` (in that order)."""
    eta = (jx - jy) / (8.0 * b)
    e2 = eta * eta
    log2e = math.log2(math.e)
    return e2 * (-math.log2(e2) + log2e - 2.0), e2 * (-math.log2(e2) + log2e)


def _acc8() -> tuple[bool, str]:
    b = 50.0
    state = pair_densities(ChainSpec.from_chi(100, 1.0, 0.5, b), [1])[1]
    d = discord(state).discord
    e = eof(concurrence(state)[0])
    d_pred, _ = strong_field_prediction(1.0, 0.5, b)
    rel = abs(d - d_pred) / d_pred
    return rel <= 0.05 and e > d, f"D={d:.5e}, prediction {d_pred:.5e} (rel {rel:.1e}), E={e:.5e}"


def _acc9() -> tuple[bool, str]:
    worst, ok = 0.0, True
    for n in (8, 10, 100):
        spec = ChainSpec.from_chi(n, 1.0, 0.5, 0.0)
        spec = spec.with_field(factorizing_field(spec))
        target = -n * spec.j_plus / 2.0
        err = max(abs(e - target) for e in sector_energies(spec))
        ok &= err <= 1e-12 * n
        worst = max(worst, err / n)
    return ok, f"max |E-(-n J+/2)|/n = {worst:.1e}"


def acceptance_checks(oracle_rows: list[OracleComparison] | None = None) -> Iterator[CheckResult]:
    yield _timed("1 mixture discord maximum", 1.0, _acc1)
    yield _timed("2 mixture discord at pi/4", 1.0, _acc2)
    yield _timed("3 side-limits at B_s, n=10", 5.0, _acc3)
    holder: list[list[OracleComparison]] = []

    def acc4():
        ok, detail, rows = _oracle_check((4, 6, 8, 10), (0.25, 0.5, 0.75), 21)
        holder.append(rows)
        return ok, detail

    yield _timed("4 oracle equivalence", 120.0, acc4)
    yield _timed("5 factorization residual", 60.0, _acc5)
    yield _timed("6 L-independence at B_s, n=100", 30.0, _acc6)
    yield _timed("7 parity-transition count", 5.0, _acc7)
    yield _timed("8 strong-field asymptotics", 10.0, _acc8)
    yield _timed("9 sector energy identity", 1.0, _acc9)

    def acc10():
        parts = [discord_bounds_batch(10_000), _monogamy(holder[0]), marginal_invariance_batch(1_000)]
        return all(p[0] for p in parts), "; ".join(p[1] for p in parts)

    yield _timed("10 property suites", 60.0, acc10)


def oracle_checks() -> Iterator[CheckResult]:
    for n in (8, 10):
        def body(n=n):
            ok, detail, _ = _oracle_check((n,), (0.25, 0.5, 0.75), 11)
            return ok, detail

        yield _timed(f"jw and lmg vs ED, n={n}", None, body)


def invariant_checks() -> Iterator[CheckResult]:
    yield _timed("discord within [0, I]", None, lambda: discord_bounds_batch(2_000))
    yield _timed(
        "monogamy along oracle sweeps",
        None,
        lambda: _monogamy(list(oracle_sweep((4, 6, 8), (0.25, 0.5, 0.75), 11))),
    )
    yield _timed("unmeasured marginal invariance", None, lambda: marginal_invariance_batch(1_000))


def run_suite(name: str) -> list[CheckResult]:
    if name == "oracle":
        return list(oracle_checks())
    if name == "invariants":
        return list(invariant_checks())
    if name == "acceptance":
        return list(acceptance_checks())
    raise ValueError(f"suite: expected one of {SUITES}, got {name!r}")
