import numpy as np
import pytest

from qcorrel import (
    DensityMatrix,
    LabelError,
    OptimizerConfig,
    PureState,
    SubsystemLayout,
    UnsupportedDimensionError,
    conservation_residual,
    delta_balance,
    discord_ledger,
    example_family_state,
    focus_ledgers,
    koashi_winter_residual,
    partial_trace,
    random_pure_state,
    ssa_sweep,
    von_neumann_entropy,
)

from oracles import grid_quantum_discord

LAY3 = SubsystemLayout((2, 2, 2), ("A", "B", "E"))
EOF_C_TWO_THIRDS = 0.5500477595827576  # Wootters EOF at concurrence 2/3


def triple(amp_map):
    amps = np.zeros(8, dtype=complex)
    for idx, val in amp_map.items():
        amps[idx] = val
    return PureState(amps / np.linalg.norm(amps), LAY3)


def bell_spectator():
    return triple({0b000: 1.0, 0b110: 1.0})


def ghz():
    return triple({0b000: 1.0, 0b111: 1.0})


def w_state():
    return triple({0b001: 1.0, 0b010: 1.0, 0b100: 1.0})


class TestKoashiWinterResidual:
    def test_bell_spectator(self):
        res = koashi_winter_residual(bell_spectator(), "A", "B", "E",
                                     OptimizerConfig(seed=1))
        assert abs(res) < 1e-6

    def test_ghz(self):
        res = koashi_winter_residual(ghz(), "A", "B", "E", OptimizerConfig(seed=2))
        assert abs(res) < 1e-6

    def test_random_sample(self):
        for seed in range(10):
            psi = random_pure_state(LAY3, 500 + seed)
            res = koashi_winter_residual(psi, "A", "B", "E",
                                         OptimizerConfig(seed=seed))
            assert abs(res) < 1e-4

    def test_label_validation(self):
        with pytest.raises(LabelError):
            koashi_winter_residual(ghz(), "A", "B", "B")


class TestDiscordLedger:
    def test_product_state_all_zero(self):
        led = discord_ledger(triple({0b000: 1.0}), OptimizerConfig(seed=3))
        for field in ("S_A", "S_B", "S_E", "E_AB", "E_AE", "E_BE", "J_AE",
                      "delta_AB", "delta_AE", "delta_BA", "delta_BE",
                      "r1", "r2", "r3", "r4", "r5"):
            assert abs(getattr(led, field)) < 1e-9, field

    def test_w_state(self):
        led = discord_ledger(w_state(), OptimizerConfig(seed=4))
        assert abs(led.E_AB - EOF_C_TWO_THIRDS) < 1e-9
        assert abs(led.E_AE - EOF_C_TWO_THIRDS) < 1e-9
        for r in (led.r2, led.r3, led.r4, led.r5):
            assert abs(r) < 1e-4
        # cross-check one optimized discord against the dense grid scan
        rho_ab = w_state().reduced(("A", "B"))
        oracle = grid_quantum_discord(rho_ab.entries, (2, 2), 1)
        assert abs(led.delta_AB - oracle) < 1e-4

    def test_bell_spectator_values(self):
        led = discord_ledger(bell_spectator(), OptimizerConfig(seed=5))
        assert abs(led.E_AB - 1.0) < 1e-9
        assert abs(led.delta_AB - 1.0) < 1e-6
        assert abs(led.E_AE) < 1e-9
        assert abs(led.delta_AE) < 1e-6
        for r in (led.r1, led.r2, led.r3, led.r4, led.r5):
            assert abs(r) < 1e-6

    def test_pure_state_entropy_pairings(self):
        psi = random_pure_state(LAY3, 21)
        led = discord_ledger(psi, OptimizerConfig(seed=21))
        assert abs(led.S_AB - led.S_E) < 1e-9
        assert abs(led.S_AE - led.S_B) < 1e-9
        assert abs(led.S_BE - led.S_A) < 1e-9

    def test_roles_relabeling(self):
        psi = random_pure_state(LAY3, 22)
        led = discord_ledger(psi, OptimizerConfig(seed=22), roles=("B", "A", "E"))
        assert led.labels == ("B", "A", "E")
        assert abs(led.S_A - von_neumann_entropy(psi.reduced("B"))) < 1e-12

    def test_rejects_higher_dims(self):
        lay = SubsystemLayout((2, 2), ("A", "B"))
        psi = random_pure_state(lay, 1)
        with pytest.raises(UnsupportedDimensionError):
            discord_ledger(psi)


class TestFocusLedgers:
    def test_matches_single_ledgers(self):
        psi = random_pure_state(LAY3, 33)
        cfg = OptimizerConfig(seed=33)
        bundle = focus_ledgers(psi, cfg)
        direct = discord_ledger(psi, cfg, roles=("B", "A", "E"))
        assert bundle["B"].labels == ("B", "A", "E")
        assert abs(bundle["B"].r5 - direct.r5) < 1e-12
        assert abs(bundle["B"].E_AB - direct.E_AB) < 1e-12

    def test_r5_equals_conservation_residual(self):
        psi = random_pure_state(LAY3, 34)
        cfg = OptimizerConfig(seed=34)
        bundle = focus_ledgers(psi, cfg)
        for focus in ("A", "B", "E"):
            direct = conservation_residual(psi, focus, cfg)
            assert abs(bundle[focus].r5 - direct) < 1e-9


class TestConservationResidual:
    def test_product(self):
        res = conservation_residual(triple({0b000: 1.0}), "A",
                                    OptimizerConfig(seed=6))
        assert abs(res) < 1e-9

    def test_ghz_every_focus(self):
        for focus in ("A", "B", "E"):
            res = conservation_residual(ghz(), focus, OptimizerConfig(seed=7))
            assert abs(res) < 1e-6

    def test_unknown_focus(self):
        with pytest.raises(LabelError):
            conservation_residual(ghz(), "Q")


class TestDeltaBalance:
    def test_pure_states_give_zero_delta(self):
        for seed in (1, 2, 3):
            psi = random_pure_state(LAY3, 600 + seed)
            rep = delta_balance(psi.to_density(), "A", "B", "E",
                                OptimizerConfig(seed=seed))
            assert abs(rep.delta) < 1e-4
            assert abs(rep.I2 - (rep.I1 - rep.delta)) < 1e-12
            assert rep.ss_holds and rep.strengthened_holds

    def test_fully_classical_state(self):
        rng = np.random.default_rng(11)
        probs = rng.dirichlet(np.ones(8))
        rho = DensityMatrix(np.diag(probs).astype(complex), LAY3)
        rep = delta_balance(rho, "A", "B", "E", OptimizerConfig(seed=11))
        assert abs(rep.delta) < 1e-6
        assert abs(rep.E_AB) < 1e-10 and abs(rep.E_AE) < 1e-10
        assert rep.I1 >= -1e-9
        assert abs(rep.I1 - rep.I2) < 1e-6

    def test_family_point_against_grid_oracle(self):
        rho = example_family_state(0.2, 0.9)
        rep = delta_balance(rho, "A", "B", "E", OptimizerConfig(seed=12))
        rho_ab = partial_trace(rho, ("A", "B"))
        rho_ae = partial_trace(rho, ("A", "E"))
        d_ab = grid_quantum_discord(rho_ab.entries, (2, 2), 1)
        d_ae = grid_quantum_discord(rho_ae.entries, (2, 2), 1)
        delta_oracle = rep.E_AB + rep.E_AE - d_ab - d_ae
        assert abs(rep.delta - delta_oracle) < 1e-4
        assert np.sign(rep.delta) == np.sign(delta_oracle)

    def test_arrow_flip_runs(self):
        rho = example_family_state(0.3, 0.8)
        rep = delta_balance(rho, "A", "B", "E", OptimizerConfig(seed=13),
                            arrow="first")
        assert np.isfinite(rep.delta)
        assert rep.ss_holds

    def test_dimension_guard(self):
        lay = SubsystemLayout((2, 2, 4), ("A", "B", "E"))
        rho = DensityMatrix(np.eye(16) / 16, lay)
        with pytest.raises(UnsupportedDimensionError):
            delta_balance(rho, "A", "B", "E")


class TestExampleFamily:
    def test_alpha_one_is_product(self):
        rho = example_family_state(1.0, 1.0)
        expected = np.zeros((8, 8))
        expected[0, 0] = 1.0
        assert np.allclose(rho.entries, expected, atol=1e-14)

    def test_lambda_zero_is_maximally_mixed(self):
        for alpha in (0.0, 0.3, 1.0):
            rho = example_family_state(alpha, 0.0)
            assert np.allclose(rho.entries, np.eye(8) / 8, atol=1e-14)

    def test_alpha_zero_pure_component(self):
        rho = example_family_state(0.0, 1.0)
        psi = np.zeros(8)
        psi[0b101] = psi[0b011] = 1 / np.sqrt(2)
        assert np.allclose(rho.entries, np.outer(psi, psi), atol=1e-14)
        # B is maximally entangled with AE; E is in the definite state |1>
        assert abs(von_neumann_entropy(partial_trace(rho, "B")) - 1.0) < 1e-12
        assert von_neumann_entropy(partial_trace(rho, "E")) < 1e-12
        assert abs(von_neumann_entropy(partial_trace(rho, "A")) - 1.0) < 1e-12

    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            example_family_state(1.2, 0.5)
        with pytest.raises(ValueError):
            example_family_state(0.5, -0.1)

    def test_normalization_identity(self):
        for alpha in (0.0, 0.4, 0.9):
            p = np.sqrt((1 - alpha ** 2) / 2)
            assert abs(2 * p ** 2 + alpha ** 2 - 1.0) < 1e-14


class TestSsaSweep:
    def test_three_point_sweep_holds(self):
        reports = ssa_sweep(0.9, [0.0, 0.5, 1.0], OptimizerConfig(seed=14))
        assert len(reports) == 3
        assert all(r.ss_holds for r in reports)
        assert all(r.strengthened_holds for r in reports)

    def test_lambda_zero_degenerates(self):
        reports = ssa_sweep(0.0, [0.0, 0.5, 1.0], OptimizerConfig(seed=15))
        for r in reports:
            assert abs(r.delta) < 1e-6
            assert abs(r.I1 - r.I2) < 1e-6

    def test_deterministic_and_child_seeded(self):
        grid = [0.1, 0.2]
        a = ssa_sweep(0.7, grid, OptimizerConfig(seed=16))
        b = ssa_sweep(0.7, grid, OptimizerConfig(seed=16))
        assert all(x.delta == y.delta for x, y in zip(a, b))
        lone = delta_balance(example_family_state(0.2, 0.7), "A", "B", "E",
                             OptimizerConfig(seed=17))
        assert a[1].delta == lone.delta
