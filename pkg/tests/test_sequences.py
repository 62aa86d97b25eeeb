import numpy as np
import pytest
from hypothesis import given, strategies as st

from cylmeasure.errors import InputError, UndecidableError
from cylmeasure.sequences import (
    Constant,
    ConstantPlusPower,
    FiniteSequence,
    Geometric,
    PowerDecay,
    Prefixed,
    Tabulated,
    atoms_mul,
    atoms_sub,
    dominant_atom,
    ratio_is_bounded,
    ratio_series_converges,
    require_positive,
    seq_value,
    seq_values,
    series_converges,
    tail_atoms,
)


class TestFiniteSequence:
    def test_canonical_form_drops_zeros_and_sorts(self):
        fs = FiniteSequence(((4, 0.0), (2, 1.0), (7, -3.0)))
        assert fs.entries == ((2, 1.0), (7, -3.0))
        assert fs.support == (2, 7)
        assert fs.max_index == 7

    def test_absent_index_reads_zero(self):
        fs = FiniteSequence(((3, 2.0),))
        assert fs.value(3) == 2.0
        assert fs.value(1) == 0.0

    def test_duplicate_index_rejected(self):
        with pytest.raises(InputError):
            FiniteSequence(((1, 1.0), (1, 2.0)))

    def test_index_zero_rejected(self):
        with pytest.raises(InputError):
            FiniteSequence(((0, 1.0),))

    def test_from_pairs_accumulates(self):
        fs = FiniteSequence.from_pairs([(1, 1.0), (1, 2.0), (2, -1.0)])
        assert fs.entries == ((1, 3.0), (2, -1.0))

    def test_arithmetic(self):
        a = FiniteSequence.basis(1) + FiniteSequence.basis(2)
        b = FiniteSequence.basis(1) - FiniteSequence.basis(2)
        assert (a + b).entries == ((1, 2.0),)
        assert (a - a).is_zero()
        assert a.scale(2.0).value(2) == 2.0

    def test_as_vector(self):
        fs = FiniteSequence(((2, 5.0),))
        assert fs.as_vector(3).tolist() == [0.0, 5.0, 0.0]
        with pytest.raises(InputError):
            fs.as_vector(1)


class TestDecayValues:
    def test_closed_forms(self):
        assert seq_value(Constant(2.0), 10) == 2.0
        assert seq_value(PowerDecay(1.0, 2.0), 3) == pytest.approx(1.0 / 9.0)
        assert seq_value(Geometric(1.0, 0.5), 3) == pytest.approx(0.125)
        assert seq_value(ConstantPlusPower(1.0, 1.0, 1.0), 4) == pytest.approx(1.25)

    def test_prefix_overrides_then_tail(self):
        seq = Prefixed((9.0, 8.0), Constant(1.0))
        assert seq_values(seq, 4).tolist() == [9.0, 8.0, 1.0, 1.0]
        # the tail is evaluated at the absolute index, not shifted
        seq = Prefixed((9.0,), PowerDecay(1.0, 1.0))
        assert seq_value(seq, 2) == pytest.approx(0.5)

    def test_tabulated_bounds(self):
        tab = Tabulated((1.0, 2.0))
        assert seq_value(tab, 2) == 2.0
        with pytest.raises(InputError):
            seq_value(tab, 3)
        with pytest.raises(InputError):
            seq_values(tab, 5)

    def test_parameter_validation(self):
        with pytest.raises(InputError):
            Geometric(1.0, 1.5)
        with pytest.raises(InputError):
            PowerDecay(1.0, 0.0)
        with pytest.raises(InputError):
            ConstantPlusPower(0.0, 1.0, 1.0)
        with pytest.raises(InputError):
            Prefixed((), Constant(1.0))
        with pytest.raises(InputError):
            Prefixed((1.0,), Prefixed((1.0,), Constant(1.0)))

    def test_require_positive(self):
        require_positive(Constant(1.0))
        require_positive(ConstantPlusPower(1.0, -0.5, 1.0))
        with pytest.raises(InputError):
            require_positive(Constant(-1.0))
        with pytest.raises(InputError):
            require_positive(ConstantPlusPower(1.0, -1.5, 1.0))  # negative at n=1
        with pytest.raises(InputError):
            require_positive(Prefixed((1.0, -2.0), Constant(1.0)))
        with pytest.raises(InputError):
            require_positive(Tabulated((1.0, 0.0)))


class TestSeriesEngine:
    def test_square_summability_rules(self):
        # sum h_n^2 for h = 1/n, 1, 0.9^n
        for seq, expected in (
            (PowerDecay(1.0, 1.0), True),
            (Constant(1.0), False),
            (Geometric(1.0, 0.9), True),
            (PowerDecay(1.0, 0.5), False),  # sum 1/n diverges
            (ConstantPlusPower(1.0, -0.5, 1.0), False),
        ):
            atoms = tail_atoms(seq)
            assert series_converges(atoms_mul(atoms, atoms)) is expected

    def test_ratio_rules(self):
        one = tail_atoms(Constant(1.0))
        inv_n = tail_atoms(PowerDecay(1.0, 1.0))
        # sum (1/n)^2 / 1 converges, sum (n^-1/2)^2 / 1 diverges
        assert ratio_series_converges(atoms_mul(inv_n, inv_n), one)
        half = tail_atoms(PowerDecay(1.0, 0.5))
        assert not ratio_series_converges(atoms_mul(half, half), one)

    def test_boundedness(self):
        assert ratio_is_bounded(tail_atoms(Constant(2.0)), tail_atoms(Constant(1.0)))
        assert ratio_is_bounded(
            tail_atoms(ConstantPlusPower(1.0, 1.0, 1.0)), tail_atoms(Constant(1.0))
        )
        assert not ratio_is_bounded(
            tail_atoms(PowerDecay(1.0, 1.0)), tail_atoms(Constant(1.0))
        )
        assert not ratio_is_bounded(
            tail_atoms(Geometric(1.0, 0.5)), tail_atoms(Geometric(1.0, 0.25))
        )

    def test_exact_cancellation(self):
        a = tail_atoms(ConstantPlusPower(1.0, 2.0, 1.5))
        assert atoms_sub(a, a) == {}
        assert dominant_atom(atoms_sub(a, a)) is None

    def test_dominant_atom_ordering(self):
        atoms = {(0.0, 0.5): 3.0, (-2.0, 1.0): 1.0, (5.0, 0.5): 2.0}
        # q = 1 beats any q < 1 regardless of the power
        assert dominant_atom(atoms) == (-2.0, 1.0, 1.0)

    def test_tabulated_refuses_symbolic_decision(self):
        with pytest.raises(UndecidableError):
            tail_atoms(Tabulated((1.0, 2.0)))

    @given(
        st.lists(st.floats(0.1, 10.0), min_size=1, max_size=6),
        st.sampled_from(
            [Constant(1.0), PowerDecay(1.0, 1.0), Geometric(1.0, 0.5), Constant(0.25)]
        ),
    )
    def test_prefix_never_changes_decisions(self, prefix, tail):
        plain = tail_atoms(tail)
        prefixed = tail_atoms(Prefixed(tuple(prefix), tail))
        assert plain == prefixed

    def test_values_match_value_pointwise(self):
        for seq in (
            Constant(2.0),
            PowerDecay(0.5, 1.5),
            Geometric(2.0, 0.25),
            ConstantPlusPower(1.0, -0.5, 2.0),
            Prefixed((3.0, 4.0), Geometric(1.0, 0.5)),
        ):
            dense = seq_values(seq, 7)
            assert dense.tolist() == [seq_value(seq, n) for n in range(1, 8)]
            assert isinstance(dense, np.ndarray)
