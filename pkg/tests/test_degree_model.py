import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floodsim.degree_model import (
    DegreeSpec,
    DegreeStats,
    compute_stats,
    condition_diagnostics,
    erdos_gallai,
    gale_ryser,
    make_family,
    theoretical_limit,
    validate_spec,
)
from floodsim.errors import DegenerateSpecError, FamilyError, SpecStructureError, SubcriticalError

from oracles import is_bigraphical_brute, is_graphical_brute


def spec(d11, d12=None, d21=(), d22=None, **kw):
    d12 = [0] * len(d11) if d12 is None else d12
    d22 = [0] * len(d21) if d22 is None else d22
    return DegreeSpec(d11, d12, d21, d22, **kw)


def stats_with(nu11, delta11, delta21, mu11=3.0):
    return DegreeStats({}, {}, mu11, nu11, delta11, delta21, 0, 1, 1)


class TestValidate:
    def test_k4_passes(self):
        report = validate_spec(spec([3, 3, 3, 3], d21=[0, 0]))
        assert report.ok
        assert all(r.passed for r in report.results if r.required)

    def test_erdos_gallai_failure_location(self):
        assert not is_graphical_brute([3, 3, 1, 1])
        report = validate_spec(spec([3, 3, 1, 1]))
        assert not report["erdos_gallai_d11"].passed
        assert "k=2" in report["erdos_gallai_d11"].detail
        assert erdos_gallai([3, 3, 1, 1]) == (False, 2)

    def test_gale_ryser_example(self):
        assert is_bigraphical_brute([2, 2], [2, 1, 1])
        report = validate_spec(spec([3, 3, 3, 3, 0, 0][:4], d12=[2, 2, 0, 0], d21=[2, 1, 1]))
        assert report["gale_ryser"].passed
        assert report["balance"].passed

    def test_parity_and_balance(self):
        report = validate_spec(spec([1, 1, 1], d12=[1, 0, 0], d21=[1, 1], d22=[1, 0]))
        assert not report["parity_d11"].passed
        assert not report["parity_d22"].passed
        assert not report["balance"].passed
        assert "(ii)" in report["balance"].detail

    def test_theorem_regime_minima(self):
        loose = spec([2, 2, 2], d12=[1, 0, 0], d21=[1, 0])
        assert validate_spec(loose).ok
        strict = spec([2, 2, 2], d12=[1, 0, 0], d21=[1, 0], theorem_regime=True)
        report = validate_spec(strict)
        assert not report.ok
        assert {r.rule for r in report.failed()} == {"min_d11", "min_d21"}

    def test_length_mismatch_is_structural(self):
        with pytest.raises(SpecStructureError):
            DegreeSpec([3, 3], [0], [], [])
        with pytest.raises(SpecStructureError):
            DegreeSpec([3], [0], [1, 1], [0])
        with pytest.raises(SpecStructureError):
            DegreeSpec([-1], [0], [], [])

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=1, max_size=8),
           st.lists(st.integers(0, 3), min_size=1, max_size=6),
           st.randoms(use_true_random=False))
    def test_permutation_invariant_and_idempotent(self, d11, d21, rnd):
        d12 = [(i * 7) % 4 for i in range(len(d11))]
        base = spec(d11, d12=d12, d21=d21, d22=[x % 2 for x in d21])
        shuffled = []
        for name in ("d11", "d12", "d21", "d22"):
            seq = getattr(base, name).tolist()
            rnd.shuffle(seq)
            shuffled.append(seq)
        other = DegreeSpec(*shuffled)
        assert validate_spec(base) == validate_spec(other)
        assert validate_spec(base) == validate_spec(base)


class TestGraphicality:
    def test_erdos_gallai_matches_brute_force_small(self):
        for n in range(1, 6):
            for seq in itertools.product(range(5), repeat=n):
                assert erdos_gallai(seq)[0] == is_graphical_brute(seq), seq

    def test_gale_ryser_matches_brute_force_small(self):
        for n1, n2 in itertools.product(range(1, 4), repeat=2):
            for rows in itertools.product(range(4), repeat=n1):
                for cols in itertools.product(range(4), repeat=n2):
                    assert gale_ryser(rows, cols)[0] == is_bigraphical_brute(rows, cols)

    def test_empty_sequences(self):
        assert erdos_gallai([]) == (True, None)
        assert gale_ryser([], []) == (True, None)
        assert gale_ryser([], [1]) == (False, 0)

    def test_large_regular_sequence(self):
        assert erdos_gallai(np.full(100_001, 3))[0] is False  # odd sum
        assert erdos_gallai(np.full(100_000, 3))[0] is True


class TestStats:
    def test_regular(self):
        s = compute_stats(spec([3] * 10))
        assert s.mu11 == 3
        assert s.nu11 == 2
        assert s.p11 == {3: 1.0}

    def test_two_values(self):
        s = compute_stats(spec([3, 4]))
        assert s.p11 == {3: 0.5, 4: 0.5}
        assert s.mu11 == 3.5
        assert s.nu11 == pytest.approx(9 / 3.5, abs=1e-15)

    def test_passive_side(self):
        s = compute_stats(spec([3, 3, 3, 3], d12=[1, 1, 1, 1], d21=[1, 1, 1, 1]))
        assert s.delta21 == 1
        assert s.p21 == {1: 1.0}
        assert s.N == 4

    def test_no_passive_nodes(self):
        assert compute_stats(spec([3, 3, 3, 3])).delta21 is None

    def test_degenerate(self):
        with pytest.raises(DegenerateSpecError):
            compute_stats(spec([0, 0]))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 40), min_size=1, max_size=60).filter(any))
    def test_invariants(self, d11):
        s = compute_stats(spec(d11))
        assert abs(sum(s.p11.values()) - 1) <= 1e-12
        second = sum(j * (j - 1) * p for j, p in s.p11.items())
        assert abs(s.nu11 * s.mu11 - second) <= 1e-9
        assert s.mu11 == pytest.approx(sum(j * p for j, p in s.p11.items()), abs=1e-12)


class TestLimit:
    def test_examples(self):
        assert theoretical_limit(stats_with(2, 3, 1), 1, 1) == 2.0
        assert theoretical_limit(stats_with(2, 3, 3), 1, 1) == pytest.approx(1 + 1 / 3, abs=1e-15)
        assert theoretical_limit(stats_with(3, 4, 1), 2, 1) == 1.25

    def test_classical_without_passive(self):
        assert theoretical_limit(stats_with(2, 3, None), 1, 1) == pytest.approx(4 / 3)

    def test_subcritical(self):
        with pytest.raises(SubcriticalError):
            theoretical_limit(stats_with(1.0, 3, 1), 1, 1)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1.05, 10), st.integers(3, 8), st.integers(1, 8),
           st.floats(0.1, 10), st.floats(0.1, 10), st.floats(1.01, 3))
    def test_monotone(self, nu, d11, d21, l11, l12, factor):
        f = lambda nu=nu, d21=d21, l11=l11, l12=l12: theoretical_limit(stats_with(nu, d11, d21), l11, l12)
        base = f()
        assert f(l11=l11 * factor) <= base
        assert f(l12=l12 * factor) <= base
        assert f(d21=d21 + 1) <= base


class TestDiagnostics:
    def test_degree_one_bipartite(self):
        d = condition_diagnostics(spec([3] * 6, d12=[1] * 6, d21=[1] * 6))
        assert d.bs_ratio1 == 0

    def test_small_example(self):
        s_seq, t_seq = [2, 2], [2, 1, 1]
        brute = sum(a * (a - 1) * b * (b - 1) for a in s_seq for b in t_seq) / 4**2
        d = condition_diagnostics(spec([3, 3], d12=s_seq, d21=t_seq), m_grid=[1])
        assert brute == 0.5
        assert d.bs_ratio1 == brute
        assert d.bs_tail_fractions[1] == (0.5, 0.5)

    def test_tail_beyond_length_is_empty(self):
        d = condition_diagnostics(spec([3, 3], d12=[2, 2], d21=[2, 1, 1]), m_grid=[5])
        # drops min(max t, 5) = 2 of s and min(max s, 5) = 2 of t
        assert d.bs_tail_fractions[5] == (0.0, 0.25)

    def test_second_moment_proxy(self):
        d = condition_diagnostics(spec([3, 4], d12=[1, 1], d21=[2]), epsilon=0.5)
        assert d.second_moment_proxy[1] == pytest.approx(0.5 * 3**2.5 + 0.5 * 4**2.5)
        assert d.second_moment_proxy[2] == pytest.approx(2**2.5)
        assert d.flags == []

    def test_sorted_decreasing_is_order_free(self):
        a = condition_diagnostics(spec([3, 3, 3], d12=[1, 3, 2], d21=[3, 3]), m_grid=[1, 2])
        b = condition_diagnostics(spec([3, 3, 3], d12=[3, 2, 1], d21=[3, 3]), m_grid=[1, 2])
        assert a == b


class TestFamilies:
    def test_biregular_sums(self):
        s = make_family("biregular", 100, a=3, c1=1, c2=1, e=0)
        assert (s.n1, s.n2) == (100, 100)
        assert [int(getattr(s, k).sum()) for k in ("d11", "d12", "d21", "d22")] == [300, 100, 100, 0]
        assert validate_spec(s).ok

    def test_biregular_rejects_small_a(self):
        with pytest.raises(FamilyError, match="at least 3"):
            make_family("biregular", 100, a=2)

    def test_parity_and_balance_repair_preserve_minima(self):
        s = make_family("biregular", 101, a=3, c1=2, c2=3, e=1)
        assert s.d11.sum() % 2 == 0 and s.d11.min() == 3
        assert s.d12.sum() == s.d21.sum()
        assert s.d21.min() == 3 and s.d12.min() == 2
        assert s.d22.sum() % 2 == 0
        assert validate_spec(s).ok
        # only one entry touched by the parity repair
        assert np.count_nonzero(s.d11 != 3) == 1

    def test_classical(self):
        s = make_family("classical", 50)
        assert s.n2 == 0 and s.n1 == 50

    def test_infeasible(self):
        with pytest.raises(FamilyError):
            make_family("biregular", 100, c1=1, c2=0)
        with pytest.raises(FamilyError):
            make_family("biregular", 5)
        with pytest.raises(FamilyError):
            make_family("nope", 100)
        with pytest.raises(FamilyError):
            make_family("biregular", 100, bogus=1)

    def test_powerlaw_deterministic(self):
        a = make_family("truncated-powerlaw", 1000, seed=3)
        b = make_family("truncated-powerlaw", 1000, seed=3)
        assert a == b
        assert a.d11.min() >= 3 and a.d11.max() <= 11  # j_max = 10, plus parity bump

    def test_powerlaw_second_moment_stable(self):
        # untruncated value: sum_{j>=3} j**-1.4 / sum_{j>=3} j**-3.5 (mpmath zeta)
        limit = 45.0278976857272
        vals = []
        for kappa in (1_000, 10_000, 100_000):
            s = make_family("truncated-powerlaw", kappa, exponent=3.5, seed=kappa)
            proxy = condition_diagnostics(s).second_moment_proxy[1]
            assert math.isfinite(proxy)
            vals.append(proxy)
        # truncation at kappa**(1/3) converges slowly but stays bounded
        assert all(10 < v < limit for v in vals)
