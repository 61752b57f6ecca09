import json
import math

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from chordprob import measure as ms
from chordprob.geometry import Arc


class TestValidate:
    def test_valid_pair(self):
        m = ms.validate(ms.discrete([0, 0.5], [0.5, 0.5]))
        assert m.n_atoms == 2 and m.is_discrete

    def test_duplicate(self):
        with pytest.raises(ms.MeasureError, match="duplicate atom"):
            ms.discrete([0, 0], [0.5, 0.5])

    def test_duplicate_across_seam(self):
        with pytest.raises(ms.MeasureError, match="duplicate atom"):
            ms.discrete([1e-14, 1 - 1e-14], [0.5, 0.5])

    def test_mass(self):
        with pytest.raises(ms.MeasureError, match="mass"):
            ms.Measure([0.0], [0.6], ((Arc.span(0, 1), 0.3),))

    def test_negative(self):
        with pytest.raises(ms.MeasureError, match="negative weight"):
            ms.discrete([0, 0.5], [1.5, -0.5])

    def test_sorted_and_canonical(self):
        m = ms.discrete([0.75, -0.75, 1.5], [0.2, 0.3, 0.5])
        assert np.array_equal(m.angles, [0.25, 0.5, 0.75])
        assert np.array_equal(m.weights, [0.3, 0.5, 0.2])

    @given(st.integers(1, 10), st.integers(0, 2**32 - 1))
    def test_idempotent(self, n, seed):
        m = ms.random_discrete(np.random.default_rng(seed), n)
        assert ms.validate(m) == m
        assert ms.validate(ms.validate(m)) == ms.validate(m)


class TestJson:
    @given(st.integers(0, 5), st.integers(0, 3), st.integers(0, 2**32 - 1))
    def test_round_trip_bit_exact(self, n_atoms, n_arcs, seed):
        if n_atoms + n_arcs == 0:
            return
        m = ms.random_mixture(np.random.default_rng(seed), n_atoms, n_arcs)
        back = ms.Measure.from_json(m.to_json())
        assert back == m
        assert back.to_json() == m.to_json()

    def test_schema(self, rng, load_schema):
        schema = load_schema("measure")
        for m in [ms.uniform(), ms.antipodal_pair(), ms.random_mixture(rng, 3, 2)]:
            jsonschema.validate(json.loads(m.to_json()), schema)

    def test_radians(self):
        m = ms.Measure.from_dict({"atoms": [{"angle_turns": math.pi, "weight": 1.0}], "arcs": []}, "radians")
        assert m.angles[0] == 0.5

    def test_malformed(self):
        with pytest.raises(ms.MeasureError):
            ms.Measure.from_json("[1, 2]")
        with pytest.raises(ms.MeasureError):
            ms.Measure.from_json('{"atoms": [{"weight": 1}]}')
        with pytest.raises(ms.MeasureError):
            ms.Measure.from_json("not json")


class TestSample:
    def test_support(self, rng):
        x = ms.sample(ms.antipodal_pair(), rng, 1000)
        assert set(np.unique(x)) <= {0.0, 0.5}
        x = ms.sample(ms.Measure([], [], ((Arc(0, 0.25), 1.0),)), rng, 1000)
        assert x.min() >= 0 and x.max() <= 0.25

    def test_uniform_ks(self, rng):
        x = ms.sample(ms.uniform(), rng, 100_000)
        assert stats.kstest(x, "uniform").pvalue > 0.01

    def test_atom_frequencies(self, rng):
        m = ms.discrete([0.1, 0.4, 0.7], [0.2, 0.3, 0.5])
        n = 1_000_000
        x = ms.sample(m, rng, n)
        for a, w in zip(m.angles, m.weights):
            freq = np.count_nonzero(x == a) / n
            assert abs(freq - w) < 4 * math.sqrt(w * (1 - w) / n)

    def test_deterministic(self):
        m = ms.random_mixture(np.random.default_rng(1), 3, 2)
        a = ms.sample(m, np.random.default_rng(5), 100)
        b = ms.sample(m, np.random.default_rng(5), 100)
        assert np.array_equal(a, b)


class TestFourier:
    def test_examples(self):
        assert ms.fourier_coefficient(ms.uniform(), 3) == 0
        pair = ms.antipodal_pair()
        assert ms.fourier_coefficient(pair, 2) == pytest.approx(1, abs=1e-15)
        assert abs(ms.fourier_coefficient(pair, 3)) < 1e-15

    @given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 2**32 - 1))
    def test_zero_and_conjugate(self, n_atoms, n_arcs, seed):
        if n_atoms + n_arcs == 0:
            return
        m = ms.random_mixture(np.random.default_rng(seed), n_atoms, n_arcs)
        assert ms.fourier_coefficient(m, 0) == pytest.approx(1, abs=1e-12)
        n = np.arange(1, 40)
        pos, neg = ms.fourier_coefficient(m, n), ms.fourier_coefficient(m, -n)
        assert np.allclose(neg, np.conj(pos), atol=1e-13)
        assert np.all(np.abs(pos) <= 1 + 1e-12)

    def test_arc_against_quadrature(self):
        from scipy.integrate import quad

        arc = Arc(0.8, 0.15)
        m = ms.Measure([], [], ((arc, 1.0),))
        for n in [1, 2, 5, 11]:
            f = lambda t, part: part(np.exp(-2j * np.pi * n * t)) / arc.length
            re = quad(f, 0.8, 1.15, args=(np.real,))[0]
            im = quad(f, 0.8, 1.15, args=(np.imag,))[0]
            assert ms.fourier_coefficient(m, n) == pytest.approx(re + 1j * im, abs=1e-12)


class TestSymmetry:
    def test_examples(self):
        assert ms.is_antipodally_symmetric(ms.antipodal_pair())
        assert not ms.is_antipodally_symmetric(ms.discrete([0.2]))
        assert ms.is_antipodally_symmetric(ms.uniform())

    @given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 2**32 - 1))
    def test_symmetrize(self, n_atoms, n_arcs, seed):
        if n_atoms + n_arcs == 0:
            return
        m = ms.symmetrize(ms.random_mixture(np.random.default_rng(seed), n_atoms, n_arcs))
        assert ms.is_antipodally_symmetric(m)
        odd = ms.fourier_coefficient(m, np.arange(1, 30, 2))
        assert np.abs(odd).max() < 1e-12


def test_merge_close_atoms():
    a, w = ms.merge_close_atoms([0.2, 0.2 + 1e-14, 1 - 1e-14, 0.0], [0.1, 0.2, 0.3, 0.4])
    assert len(a) == 2
    assert w.sum() == pytest.approx(1.0)
    assert sorted(np.round(w, 12)) == [0.3, 0.7]


def test_rotate():
    m = ms.regular_polygon(3).rotate(0.25)
    assert np.allclose(m.angles, [0.25, 7 / 12, 11 / 12])
