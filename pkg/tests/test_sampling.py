from fractions import Fraction

from extension import modified_extension_c
from sampling import CausalClass, SampleScheme

ALL_CLASSES = (CausalClass.SPACELIKE, CausalClass.TIMELIKE, CausalClass.NULL)


def test_samples_hit_their_causal_class_exactly(osserman6_metric):
    samples = SampleScheme(seed=3, count=30).samples(osserman6_metric, ALL_CLASSES)
    assert len(samples) == 30
    for sample in samples:
        assert sample.vector.eps == Fraction(sample.causal.value)
        assert CausalClass.of(sample.vector.eps) is sample.causal
        assert any(sample.vector.comps)


def test_null_samples_cycle_through_kinds(osserman6_metric):
    samples = SampleScheme(count=9).samples(osserman6_metric, (CausalClass.NULL,))
    assert [s.kind for s in samples[:3]] == ["coordinate", "random", "fiber"]
    fiber = samples[2].vector.comps
    assert not any(fiber[:3])


def test_samples_are_deterministic_per_seed(type_ii_parts):
    nabla, Phi = type_ii_parts
    m = modified_extension_c(nabla, Phi, 4)
    first = SampleScheme(seed=11, count=12).samples(m, ALL_CLASSES)
    again = SampleScheme(seed=11, count=12).samples(m, ALL_CLASSES)
    other = SampleScheme(seed=12, count=12).samples(m, ALL_CLASSES)
    assert [s.vector for s in first] == [s.vector for s in again]
    assert [s.point.values for s in first] == [s.point.values for s in again]
    assert [s.point.values for s in first] != [s.point.values for s in other]


def test_points_are_reused_round_robin(osserman6_metric):
    scheme = SampleScheme(count=10, npoints=4)
    samples = scheme.samples(osserman6_metric, (CausalClass.SPACELIKE,))
    assert [s.point_index for s in samples] == [0, 1, 2, 3, 0, 1, 2, 3, 0, 1]
    assert samples[0].point == samples[4].point


def test_every_class_visits_every_point(osserman6_metric):
    classes = (CausalClass.SPACELIKE, CausalClass.TIMELIKE)
    samples = SampleScheme(count=64, npoints=8).samples(osserman6_metric, classes)
    for causal in classes:
        visited = [s.point_index for s in samples if s.causal is causal]
        assert len(visited) == 32
        assert visited[:8] == list(range(8))
        assert set(visited) == set(range(8))


def test_from_env(monkeypatch):
    monkeypatch.setenv("WALKER_EXT_SEED", "42")
    monkeypatch.setenv("WALKER_EXT_SAMPLES", "5")
    scheme = SampleScheme.from_env()
    assert (scheme.seed, scheme.count) == (42, 5)
    assert SampleScheme.from_env(seed=1, count=2).seed == 1
    assert SampleScheme.from_env(seed=1, count=2).count == 2


def test_from_env_ignores_garbage(monkeypatch, capsys):
    monkeypatch.setenv("WALKER_EXT_SAMPLES", "many")
    assert SampleScheme.from_env().count == 64
    assert "Warning: WALKER_EXT_SAMPLES" in capsys.readouterr().err
