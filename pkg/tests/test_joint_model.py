import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from causalgain import (
    JointCounts,
    add_observation,
    conditional_given_x,
    conditional_given_y,
    marginal_x,
    marginal_y,
    mean_field_counts,
    new_counts,
    posterior_joint,
)
from causalgain.joint_model import load_counts_csv, write_counts_csv

from oracles import q_cond_y_given_x_exact, q_joint_exact, q_marg_y_exact

EX = [[3, 1], [0, 2]]


def counts_strategy(max_k=5, max_count=50.0):
    shape = st.tuples(st.integers(2, max_k), st.integers(2, max_k))
    return shape.flatmap(
        lambda s: arrays(np.float64, s, elements=st.floats(0, max_count, allow_nan=False))
    )


alphas = st.floats(0.01, 10.0)


class TestConstruction:
    def test_new_counts(self):
        c = new_counts(2, 2, 2.0)
        assert c.counts.shape == (2, 2)
        assert c.total == 0
        assert new_counts(4, 4, 1.0).counts.shape == (4, 4)

    @pytest.mark.parametrize("args", [(2, 3, 0.0), (2, 3, -1.0), (1, 3, 1.0), (2, 1, 1.0)])
    def test_new_counts_rejects(self, args):
        with pytest.raises(ValueError):
            new_counts(*args)

    def test_rejects_negative_counts(self):
        with pytest.raises(ValueError):
            JointCounts(np.array([[1.0, -1.0], [0.0, 0.0]]), 1.0)

    def test_read_only(self):
        c = new_counts(2, 2, 1.0)
        with pytest.raises(ValueError):
            c.counts[0, 0] = 5

    def test_add_observation(self):
        c = add_observation(new_counts(2, 2, 2.0), 1, 1)
        assert c.counts[0, 0] == 1 and c.total == 1
        c2 = add_observation(c, 1, 1)
        assert c2.counts[0, 0] == 2
        assert c.counts[0, 0] == 1  # original untouched
        np.testing.assert_array_equal(c2.counts[[0, 1, 1], [1, 0, 1]], 0)

    @pytest.mark.parametrize("x,y", [(3, 1), (0, 1), (1, 3)])
    def test_add_observation_bounds(self, x, y):
        with pytest.raises(IndexError):
            add_observation(new_counts(2, 2, 1.0), x, y)

    def test_mean_field_example1(self):
        p = np.array([[0.9, 0.1], [0.1, 0.9]]) / 2
        c = mean_field_counts(p, 100, 2.0)
        np.testing.assert_allclose(c.counts, [[45, 5], [5, 45]], rtol=0, atol=1e-12)
        assert c.total == pytest.approx(100, abs=1e-12)

    def test_mean_field_uniform(self):
        c = mean_field_counts(np.full((2, 2), 0.25), 4, 1.0)
        np.testing.assert_array_equal(c.counts, 1.0)

    def test_mean_field_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            mean_field_counts(np.array([[0.9, 0.1], [0.1, 0.9]]), 100, 2.0)


class TestPosterior:
    def test_zero_counts_uniform(self):
        c = new_counts(3, 4, 0.7)
        np.testing.assert_allclose(posterior_joint(c), 1 / 12, atol=1e-15)
        np.testing.assert_allclose(conditional_given_x(c, 2), 1 / 4, atol=1e-15)
        np.testing.assert_allclose(marginal_y(c), 1 / 4, atol=1e-15)
        np.testing.assert_allclose(conditional_given_y(c, 1), 1 / 3, atol=1e-15)
        np.testing.assert_allclose(marginal_x(c), 1 / 3, atol=1e-15)

    def test_hand_values(self):
        c = JointCounts(np.array(EX, dtype=float), 1.0)
        assert posterior_joint(c)[0, 0] == pytest.approx(0.4, abs=1e-15)
        np.testing.assert_allclose(conditional_given_x(c, 1), [2 / 3, 1 / 3], atol=1e-15)
        np.testing.assert_allclose(marginal_y(c), [0.5, 0.5], atol=1e-15)
        np.testing.assert_allclose(conditional_given_y(c, 1), [0.8, 0.2], atol=1e-15)

    def test_example1_mean_field(self):
        c = mean_field_counts(np.array([[0.45, 0.05], [0.05, 0.45]]), 100, 2.0)
        assert conditional_given_x(c, 1)[0] == pytest.approx(47 / 54, abs=1e-14)
        np.testing.assert_allclose(marginal_y(c), [0.5, 0.5], atol=1e-15)

    def test_large_n_limit(self):
        p = np.array([[0.1, 0.2], [0.3, 0.4]])
        c = mean_field_counts(p, 1e9, 2.0)
        np.testing.assert_allclose(posterior_joint(c), p, atol=1e-6)

    @settings(max_examples=60, deadline=None)
    @given(counts_strategy(max_k=4, max_count=20), st.sampled_from([0.5, 1, 2, 3]))
    def test_matches_exact_fractions(self, counts, alpha):
        counts = np.round(counts)
        c = JointCounts(counts, alpha)
        lst = counts.astype(int).tolist()
        np.testing.assert_allclose(posterior_joint(c), np.array(q_joint_exact(lst, alpha), float), atol=1e-14)
        np.testing.assert_allclose(marginal_y(c), np.array(q_marg_y_exact(lst, alpha), float), atol=1e-14)
        for x in range(1, c.k_x + 1):
            np.testing.assert_allclose(
                conditional_given_x(c, x), np.array(q_cond_y_given_x_exact(lst, alpha, x), float), atol=1e-14
            )


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(counts_strategy(), alphas)
    def test_distributions_valid(self, counts, alpha):
        c = JointCounts(counts, alpha)
        dists = [posterior_joint(c).ravel(), marginal_x(c), marginal_y(c)]
        dists += [conditional_given_x(c, x) for x in range(1, c.k_x + 1)]
        dists += [conditional_given_y(c, y) for y in range(1, c.k_y + 1)]
        for d in dists:
            assert np.all(d > 0)
            assert abs(d.sum() - 1) < 1e-12

    @settings(max_examples=200, deadline=None)
    @given(counts_strategy(), alphas)
    def test_joint_sums_to_marginals(self, counts, alpha):
        c = JointCounts(counts, alpha)
        q = posterior_joint(c)
        np.testing.assert_allclose(q.sum(axis=0), marginal_y(c), atol=1e-12)
        np.testing.assert_allclose(q.sum(axis=1), marginal_x(c), atol=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(counts_strategy(), alphas, st.data())
    def test_observation_moves_mass(self, counts, alpha, data):
        c = JointCounts(counts, alpha)
        x = data.draw(st.integers(1, c.k_x))
        y = data.draw(st.integers(1, c.k_y))
        before, after = posterior_joint(c), posterior_joint(add_observation(c, x, y))
        assert after[x - 1, y - 1] > before[x - 1, y - 1]
        mask = np.ones_like(before, dtype=bool)
        mask[x - 1, y - 1] = False
        assert np.all(after[mask] <= before[mask])

    @settings(max_examples=100, deadline=None)
    @given(counts_strategy(), alphas)
    def test_transpose_symmetry(self, counts, alpha):
        c = JointCounts(counts, alpha)
        t = c.transposed()
        for y in range(1, c.k_y + 1):
            np.testing.assert_array_equal(conditional_given_y(c, y), conditional_given_x(t, y))
        np.testing.assert_array_equal(marginal_x(c), marginal_y(t))
        np.testing.assert_allclose(posterior_joint(t), posterior_joint(c).T, atol=1e-15)


class TestCsv:
    def test_round_trip(self, tmp_path):
        c = JointCounts(np.array([[3, 0, 1.5], [0, 2, 0]]), 1.0)
        path = tmp_path / "c.csv"
        write_counts_csv(c, path)
        loaded = load_counts_csv(path, 2, 3, 1.0)
        np.testing.assert_array_equal(loaded.counts, c.counts)

    def test_infers_dims_and_missing_cells(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("x,y,count\n1,1,4\n3,2,1\n")
        c = load_counts_csv(path, None, None, 2.0)
        assert (c.k_x, c.k_y) == (3, 2)
        assert c.counts[1].sum() == 0

    @pytest.mark.parametrize(
        "text", ["a,b,c\n1,1,1\n", "x,y,count\n1,1\n", "x,y,count\n1,z,2\n", "x,y,count\n0,1,2\n"]
    )
    def test_malformed(self, tmp_path, text):
        path = tmp_path / "c.csv"
        path.write_text(text)
        with pytest.raises(ValueError):
            load_counts_csv(path, 2, 2, 1.0)

    def test_cell_outside_declared_dims(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("x,y,count\n3,1,1\n")
        with pytest.raises(ValueError):
            load_counts_csv(path, 2, 2, 1.0)
