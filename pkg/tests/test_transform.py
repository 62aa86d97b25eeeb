import math

import numpy as np
import pytest

from cylmeasure.errors import InputError, UndecidableError
from cylmeasure.gaussian import draw_coordinates
from cylmeasure.sequences import (
    Constant,
    ConstantPlusPower,
    FiniteSequence,
    Geometric,
    PowerDecay,
    Prefixed,
    Tabulated,
)
from cylmeasure.transform import (
    EmptyFamily,
    Equivalence,
    FinitelySupportedFamily,
    WeightedL2Family,
    equivalence_classify,
    ergodicity_flag,
    rn_density,
    shift_admissible,
)

E1 = FiniteSequence.basis(1)


class TestRnDensity:
    def test_zero_shift_is_one(self):
        assert rn_density(np.zeros(3), FiniteSequence(()), Constant(1.0)) == 1.0

    def test_unit_shift_at_its_own_point(self):
        # density ratio of N(1,1) against N(0,1) at x = 1 is e^{1/2}
        value = rn_density(np.array([1.0]), E1, Constant(1.0))
        oracle = math.exp(-0.0) / math.exp(-0.5)
        assert value == pytest.approx(oracle, rel=1e-15)
        assert value == pytest.approx(math.exp(0.5), rel=1e-15)

    def test_general_covariance_at_a_point(self):
        cov = Prefixed((4.0,), Constant(1.0))
        y = FiniteSequence(((1, 2.0), (3, -1.0)))
        x = np.array([0.5, 0.0, 2.0])
        expected = math.exp(
            (0.5 * 2.0 / 4.0 + 2.0 * (-1.0) / 1.0)
            - 0.5 * (4.0 / 4.0 + 1.0 / 1.0)
        )
        assert rn_density(x, y, cov) == pytest.approx(expected, rel=1e-14)

    def test_batch_evaluation_is_positive(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(50, 4))
        vals = rn_density(x, FiniteSequence(((2, 1.5),)), Constant(2.0))
        assert vals.shape == (50,)
        assert np.all(vals > 0)

    def test_support_outside_truncation_rejected(self):
        with pytest.raises(InputError, match="beyond the truncation"):
            rn_density(np.zeros(2), FiniteSequence(((3, 1.0),)), Constant(1.0))

    def test_cocycle_identity(self):
        # density(x, y1+y2) = density(x, y1) * density(x - y1, y2)
        rng = np.random.default_rng(6)
        cov = Prefixed((2.0, 0.5), Constant(1.0))
        y1 = FiniteSequence(((1, 0.3), (4, -1.0)))
        y2 = FiniteSequence(((2, 0.8), (4, 0.5)))
        for _ in range(20):
            x = rng.normal(size=5)
            lhs = rn_density(x, y1 + y2, cov)
            rhs = rn_density(x, y1, cov) * rn_density(x - y1.as_vector(5), y2, cov)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_normalization_under_the_measure(self):
        cov = Constant(1.0)
        y = FiniteSequence(((1, 1.0), (2, -0.7)))
        x = draw_coordinates(cov, 2, 400_000, np.random.default_rng(7))
        dens = rn_density(x, y, cov)
        se = dens.std(ddof=1) / math.sqrt(len(dens))
        assert abs(dens.mean() - 1.0) < 4 * se

    def test_change_of_measure_for_a_polynomial(self):
        cov = Constant(1.0)
        y = FiniteSequence(((1, 0.5),))
        x = draw_coordinates(cov, 1, 400_000, np.random.default_rng(8))
        dens = rn_density(x, y, cov)
        diff = dens * x[:, 0] ** 2 - (x[:, 0] + 0.5) ** 2
        se = diff.std(ddof=1) / math.sqrt(len(diff))
        assert abs(diff.mean()) < 5 * se


class TestShiftAdmissible:
    def test_inverse_index_shift_is_admissible(self):
        assert shift_admissible(PowerDecay(1.0, 1.0), Constant(1.0)) is True

    def test_inverse_sqrt_shift_is_not(self):
        assert shift_admissible(PowerDecay(1.0, 0.5), Constant(1.0)) is False

    def test_finite_shifts_always_admissible(self):
        assert shift_admissible(FiniteSequence(((9, 100.0),)), Geometric(1.0, 0.5)) is True

    def test_sign_of_the_amplitude_is_irrelevant(self):
        assert shift_admissible(PowerDecay(-1.0, 1.0), Constant(1.0)) is True

    def test_constant_offset_against_white_noise_diverges(self):
        assert shift_admissible(ConstantPlusPower(1.0, 1.0, 1.0), Constant(1.0)) is False

    def test_shrinking_variances_admit_fewer_shifts(self):
        # y_n = 1/n against rho_n = 1/n^3: sum n^3/n^2 diverges
        assert shift_admissible(PowerDecay(1.0, 1.0), PowerDecay(1.0, 3.0)) is False

    def test_tabulated_tail_is_undecidable(self):
        with pytest.raises(UndecidableError):
            shift_admissible(Tabulated((1.0, 0.5)), Constant(1.0))

    @pytest.mark.parametrize(
        "shift,cov",
        [
            (PowerDecay(1.0, 1.0), Constant(1.0)),
            (PowerDecay(1.0, 0.5), Constant(1.0)),
            (Geometric(1.0, 0.5), Constant(2.0)),
            (PowerDecay(1.0, 1.0), PowerDecay(1.0, 3.0)),
            (ConstantPlusPower(1.0, -0.5, 1.0), Constant(1.0)),
        ],
    )
    def test_verdict_matches_partial_sum_growth(self, shift, cov):
        # deterministic oracle: partial sums of y_n^2 / rho_n either level
        # off (admissible) or keep a visible increment (not admissible)
        from cylmeasure.sequences import seq_values

        n = 200_000
        terms = seq_values(shift, n) ** 2 / seq_values(cov, n)
        half, full = float(np.sum(terms[: n // 2])), float(np.sum(terms))
        increment = (full - half) / max(full, 1e-300)
        if shift_admissible(shift, cov):
            assert increment < 0.01
        else:
            assert increment > 0.05


class TestEquivalenceClassify:
    def test_identical_covariances(self):
        v = equivalence_classify(Constant(1.0), Constant(1.0))
        assert v.verdict is Equivalence.EQUIVALENT
        assert v.ratio_inf == v.ratio_sup == 1.0

    def test_scaled_white_noise_is_singular(self):
        v = equivalence_classify(Constant(1.0), Constant(2.0))
        assert v.verdict is Equivalence.SINGULAR
        assert v.ratio_inf == pytest.approx(2.0)
        assert v.series == "diverges"

    def test_one_plus_inverse_index_is_equivalent(self):
        v = equivalence_classify(Constant(1.0), ConstantPlusPower(1.0, 1.0, 1.0))
        assert v.verdict is Equivalence.EQUIVALENT
        assert 1.0 <= v.ratio_inf and v.ratio_sup <= 2.0
        assert v.series == "converges"

    def test_slow_ratio_decay_is_singular(self):
        # a_n = 1 + n^{-1/4}: bounded, but sum (a_n-1)^2 = sum n^{-1/2} diverges
        v = equivalence_classify(Constant(1.0), ConstantPlusPower(1.0, 1.0, 0.25))
        assert v.verdict is Equivalence.SINGULAR

    def test_different_power_rates_are_singular(self):
        v = equivalence_classify(PowerDecay(1.0, 1.0), PowerDecay(1.0, 2.0))
        assert v.verdict is Equivalence.SINGULAR

    def test_different_geometric_rates_are_singular(self):
        v = equivalence_classify(Geometric(1.0, 0.5), Geometric(1.0, 0.25))
        assert v.verdict is Equivalence.SINGULAR

    def test_same_shape_different_amplitude_is_singular(self):
        # constant ratio 2 fails square-summability just like white noise
        v = equivalence_classify(PowerDecay(1.0, 2.0), PowerDecay(2.0, 2.0))
        assert v.verdict is Equivalence.SINGULAR

    def test_prefix_modifications_never_matter(self):
        v = equivalence_classify(Prefixed((7.0, 0.1), Constant(1.0)), Constant(1.0))
        assert v.verdict is Equivalence.EQUIVALENT

    def test_limit_offset_is_singular(self):
        v = equivalence_classify(Constant(1.0), ConstantPlusPower(2.0, 1.0, 1.0))
        assert v.verdict is Equivalence.SINGULAR

    def test_tabulated_is_undecided(self):
        v = equivalence_classify(Tabulated((1.0, 1.1, 0.9)), Constant(1.0))
        assert v.verdict is Equivalence.UNDECIDED
        assert v.series == "unknown"

    @pytest.mark.parametrize(
        "a,b",
        [
            (Constant(1.0), Constant(2.0)),
            (Constant(1.0), ConstantPlusPower(1.0, 1.0, 1.0)),
            (PowerDecay(1.0, 1.0), Geometric(1.0, 0.5)),
            (Prefixed((3.0,), Constant(1.0)), Constant(1.0)),
            (Geometric(2.0, 0.5), Geometric(1.0, 0.5)),
        ],
    )
    def test_symmetry(self, a, b):
        assert equivalence_classify(a, b).verdict == equivalence_classify(b, a).verdict


class TestErgodicityFlag:
    def test_finitely_supported_always_dense(self):
        for cov in (Constant(1.0), PowerDecay(1.0, 2.0), Geometric(1.0, 0.5)):
            assert ergodicity_flag(FinitelySupportedFamily(), cov) is True

    def test_matching_weighted_space_is_dense(self):
        assert ergodicity_flag(WeightedL2Family(Constant(3.0)), Constant(1.0)) is True

    def test_strictly_smaller_space_is_not(self):
        # family shifts decay like 1/n^2 while the covariance is flat
        assert ergodicity_flag(WeightedL2Family(PowerDecay(1.0, 2.0)), Constant(1.0)) is False

    def test_empty_family(self):
        assert ergodicity_flag(EmptyFamily(), Constant(1.0)) is False

    def test_unknown_family_rejected(self):
        with pytest.raises(InputError):
            ergodicity_flag("everything", Constant(1.0))
