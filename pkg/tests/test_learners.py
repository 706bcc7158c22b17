import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regretlab import (
    DimensionMismatch,
    LdimComputer,
    LearnerConfig,
    Prediction,
    Sampled,
    Sequence,
    WeightedMajority,
    WrongPhase,
    eta_for,
    mistake_profile,
    restrict,
    run,
    wm_weights,
)
from regretlab.learners import consistent_label, halving_votes, _HalvingEngine, _SoaEngine

from .conftest import make_class, seq_of


# --- realizable-phase engines -----------------------------------------------


def test_consistent_all_agree(threshold8):
    assert consistent_label(threshold8, threshold8.full_space(), -3) == 0


def test_consistent_min_index_rule(threshold8):
    # the lowest-indexed member is h_0, which labels 1 past the origin
    assert consistent_label(threshold8, threshold8.full_space(), 1) == 1


def test_consistent_singleton(threshold8):
    from regretlab import VersionSpace

    space = VersionSpace.of([3], 5)
    for x in threshold8.domain:
        assert consistent_label(threshold8, space, x) == threshold8.evaluate(3, x)


def test_halving_majority(threshold8):
    engine = _HalvingEngine(threshold8, LearnerConfig("halving"))
    assert halving_votes(threshold8, threshold8.full_space(), 1) == (4, 1)
    assert engine.predict(threshold8.full_space(), 1) == Prediction.label(0)


def test_halving_tie_goes_to_one():
    cls = make_class([[0, 1], [1, 0]])
    engine = _HalvingEngine(cls, LearnerConfig("halving"))
    assert engine.predict(cls.full_space(), 0) == Prediction.label(1)


def test_halving_tie_variants():
    cls = make_class([[0, 1], [1, 0]])
    zero = _HalvingEngine(cls, LearnerConfig("halving", tie_break="zero"))
    coin = _HalvingEngine(cls, LearnerConfig("halving", tie_break="random"))
    assert zero.predict(cls.full_space(), 0) == Prediction.label(0)
    assert coin.predict(cls.full_space(), 0) == Prediction.prob(0.5)


def test_halving_singleton(threshold8):
    from regretlab import VersionSpace

    engine = _HalvingEngine(threshold8, LearnerConfig("halving"))
    space = VersionSpace.of([2], 5)
    assert engine.predict(space, 3) == Prediction.label(threshold8.evaluate(2, 3))


def test_soa_tie_goes_to_one(quad_class):
    engine = _SoaEngine(quad_class, LearnerConfig("soa"))
    # both restriction sides at the splitting point have dimension 1
    assert engine.predict(quad_class.full_space(), 0) == Prediction.label(1)


def test_soa_prefers_larger_dimension(threshold8):
    engine = _SoaEngine(threshold8, LearnerConfig("soa"))
    assert engine.predict(threshold8.full_space(), 1) == Prediction.label(0)


def test_soa_singleton(threshold8):
    from regretlab import VersionSpace

    engine = _SoaEngine(threshold8, LearnerConfig("soa"))
    space = VersionSpace.of([1], 5)
    assert engine.predict(space, 2) == Prediction.label(1)


# --- weighted majority core --------------------------------------------------


def test_wm_fresh_all_ones_advice():
    core = WeightedMajority(4, eta=0.5)
    assert core.predict_from_advice(np.array([1, 1, 1, 1])).p_one == pytest.approx(1.0)


def test_wm_fresh_uniform_split():
    core = WeightedMajority(2, eta=0.7)
    assert core.predict_from_advice(np.array([1, 0])).p_one == pytest.approx(0.5)


def test_wm_weighted_prediction_exact():
    core = WeightedMajority(2, eta=math.log(2), mistakes=np.array([1, 0]))
    pred = core.predict_from_advice(np.array([1, 0]))
    assert pred.p_one == pytest.approx(1 / 3, abs=1e-12)
    assert pred.randomized


def test_wm_update_counts(threshold8, realizable8):
    core = WeightedMajority(5, eta=1.0)
    advice = threshold8.column(1)
    core.update_from_advice(advice, 1)
    assert core.mistakes.tolist() == [0, 1, 1, 1, 1]
    core.update_from_advice(np.array([1, 1, 1, 1, 1]), 1)  # all correct
    assert core.mistakes.tolist() == [0, 1, 1, 1, 1]
    core.update_from_advice(np.array([0, 0, 0, 0, 0]), 1)  # all wrong
    assert core.mistakes.tolist() == [1, 2, 2, 2, 2]


def test_wm_dimension_mismatch():
    core = WeightedMajority(3, eta=0.1)
    with pytest.raises(DimensionMismatch):
        core.predict_from_advice(np.array([1, 0]))
    with pytest.raises(DimensionMismatch):
        core.update_from_advice(np.array([1, 0, 1, 0]), 1)


@given(
    st.lists(st.integers(0, 30), min_size=1, max_size=12),
    st.floats(0.0, 5.0, allow_nan=False),
)
def test_weights_always_normalized(mistakes, eta):
    w = wm_weights(np.array(mistakes), eta)
    assert abs(w.sum() - 1.0) <= 1e-12
    assert (w >= 0).all()


def test_eta_values():
    assert eta_for(4, 8, "sqrt8") == pytest.approx(math.sqrt(8 * math.log(4) / 8))
    assert eta_for(4, 8, "sqrt2") == pytest.approx(math.sqrt(2 * math.log(4) / 8))
    assert eta_for(1, 8) == 0.0
    assert eta_for(4, 0) == 0.0
    with pytest.raises(ValueError):
        eta_for(4, 8, "sqrt3")


def test_learner_config_validation():
    with pytest.raises(ValueError):
        LearnerConfig("perceptron")
    with pytest.raises(ValueError):
        LearnerConfig("wm", eta_variant="sqrt5")
    with pytest.raises(ValueError):
        LearnerConfig("halving", tie_break="alternate")


# --- hybrids ------------------------------------------------------------------


def test_hybrid_never_switches_when_realizable(threshold8, realizable8):
    trace = run(LearnerConfig("wm_halving"), threshold8, realizable8)
    assert trace.switch_round is None
    assert trace.deterministic_mistakes <= 2
    assert trace.expected_mistakes == trace.deterministic_mistakes


def test_hybrid_consistent_zero_mistakes_on_min_index_target(threshold8):
    seq = Sequence(tuple((x, threshold8.evaluate(0, x)) for x in threshold8.domain))
    trace = run(LearnerConfig("wm_consistent"), threshold8, seq)
    assert trace.expected_mistakes == 0.0
    assert trace.switch_round is None


def test_hybrid_switch_on_all_ones(threshold8, all_ones8):
    trace = run(LearnerConfig("wm_halving"), threshold8, all_ones8)
    assert trace.switch_round is not None
    assert trace.switch_round <= len(all_ones8)
    assert trace.min_mistakes_at_switch >= 1


def test_baseline_raises_after_space_empties(threshold8, all_ones8):
    with pytest.raises(WrongPhase):
        run(LearnerConfig("halving"), threshold8, all_ones8)


# --- run protocol --------------------------------------------------------------


def test_run_halving_within_log2_bound(threshold8, realizable8):
    trace = run(LearnerConfig("halving"), threshold8, realizable8)
    assert trace.deterministic_mistakes <= math.floor(math.log2(5))


def test_run_consistent_singleton_class(realizable8):
    cls = make_class([[1 if x > 0 else 0 for x in range(-3, 5)]], domain=range(-3, 5))
    trace = run(LearnerConfig("consistent"), cls, realizable8)
    assert trace.expected_mistakes == 0.0


def test_run_wm_single_round_uniform():
    cls = make_class([[1], [0]], domain=[0])
    trace = run(LearnerConfig("wm"), cls, seq_of([(0, 1)]))
    assert trace.expected_mistakes == pytest.approx(0.5)


def test_run_empty_sequence(threshold8):
    trace = run(LearnerConfig("wm"), threshold8, Sequence(()))
    assert trace.expected_mistakes == 0.0
    assert trace.rounds == []
    assert trace.to_jsonl() == ""


def test_run_single_expert_class():
    cls = make_class([[0, 1]])
    trace = run(LearnerConfig("wm"), cls, seq_of([(0, 1), (1, 1)]))
    # one expert carries all the weight; its error is the learner's error
    assert trace.expected_mistakes == pytest.approx(1.0)


def test_trace_jsonl_round_records(threshold8, realizable8):
    trace = run(LearnerConfig("wm"), threshold8, realizable8)
    lines = trace.to_jsonl().strip().splitlines()
    assert len(lines) == 8
    import json

    first = json.loads(lines[0])
    assert set(first) == {"x", "y", "p_one", "randomized", "mistake_prob"}


def test_deterministic_learner_same_trace_both_modes(threshold8, realizable8):
    analytic = run(LearnerConfig("halving"), threshold8, realizable8)
    sampled = run(LearnerConfig("halving"), threshold8, realizable8, Sampled(seed=123, trials=5))
    assert analytic.expected_mistakes == sampled.expected_mistakes
    assert [r.mistake_prob for r in analytic.rounds] == [r.mistake_prob for r in sampled.rounds]


def test_sampled_mode_reproducible(threshold8, all_ones8):
    a = run(LearnerConfig("wm"), threshold8, all_ones8, Sampled(seed=5, trials=50))
    b = run(LearnerConfig("wm"), threshold8, all_ones8, Sampled(seed=5, trials=50))
    assert (a.trial_mistakes == b.trial_mistakes).all()


def test_sampled_mean_tracks_analytic(threshold8, all_ones8):
    analytic = run(LearnerConfig("wm"), threshold8, all_ones8)
    sampled = run(LearnerConfig("wm"), threshold8, all_ones8, Sampled(seed=11, trials=4000))
    totals = sampled.trial_mistakes
    se = totals.std(ddof=1) / math.sqrt(len(totals))
    assert abs(totals.mean() - analytic.expected_mistakes) <= 3 * se + 1e-9


# --- structural invariants ------------------------------------------------------


small_tables = st.integers(1, 6).flatmap(
    lambda d: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.integers(0, 1), min_size=d * n, max_size=d * n
        ).map(lambda bits: np.array(bits).reshape(d, n))
    )
)


@st.composite
def class_with_labels(draw, max_len=12):
    table = draw(small_tables)
    cls = make_class(table)
    length = draw(st.integers(1, max_len))
    pairs = [
        (draw(st.integers(0, cls.n - 1)), draw(st.integers(0, 1))) for _ in range(length)
    ]
    return cls, pairs


@given(class_with_labels())
@settings(max_examples=100, deadline=None)
def test_halving_mistake_halves_space(case):
    cls, pairs = case
    engine = _HalvingEngine(cls, LearnerConfig("halving"))
    space = cls.full_space()
    for x, y in pairs:
        if not space:
            break
        pred = engine.predict(space, x)
        new_space = restrict(space, cls, x, y)
        if pred.p_one != y:
            assert len(new_space) <= len(space) // 2
        space = new_space


@given(class_with_labels())
@settings(max_examples=60, deadline=None)
def test_soa_mistake_drops_dimension(case):
    cls, pairs = case
    engine = _SoaEngine(cls, LearnerConfig("soa"))
    computer = LdimComputer(cls)
    space = cls.full_space()
    for x, y in pairs:
        if not space:
            break
        pred = engine.predict(space, x)
        new_space = restrict(space, cls, x, y)
        if pred.p_one != y and new_space:
            assert computer.value(new_space.mask) <= computer.value(space.mask) - 1
        space = new_space


@given(class_with_labels())
@settings(max_examples=100, deadline=None)
def test_hybrid_switch_requires_all_experts_wrong(case):
    cls, pairs = case
    trace = run(LearnerConfig("wm_halving"), cls, seq_of(pairs))
    if trace.switch_round is not None:
        assert trace.min_mistakes_at_switch >= 1
        prefix = seq_of(pairs[: trace.switch_round])
        assert mistake_profile(cls, prefix).min() >= 1


@given(class_with_labels())
@settings(max_examples=100, deadline=None)
def test_expected_mistakes_within_horizon(case):
    cls, pairs = case
    trace = run(LearnerConfig("wm"), cls, seq_of(pairs))
    assert 0.0 <= trace.expected_mistakes <= len(pairs)
