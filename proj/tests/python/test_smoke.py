import pytest

import causelab as cl


def sample_causations():
    return [cl.Causation(0, [4]), cl.Causation(1, [2, 2])]


def test_version():
    assert cl.__version__


def test_matcher_examples():
    assert cl.contains_causation([2, 9, 2], [2, 2], 1)
    assert not cl.contains_causation([2, 9, 9, 2], [2, 2], 1)
    assert cl.min_max_gap([2, 9, 9, 2], [2, 2]) == 2
    assert cl.min_max_gap([1, 3], [2]) is None
    assert cl.brute_force_contains([2, 9, 2], [2, 2], 1)


def test_label_instance_sample():
    assert cl.label_instance([4, 2, 2, 1, 0], sample_causations(), 2) == {0, 1}
    assert cl.label_instance([1, 1, 1, 1, 1], sample_causations(), 2) == set()


def test_generate_and_histogram():
    params = cl.Params(10, 2, 2, 2)
    assert params.instance_length == 6
    rng = cl.RandomSource(3)
    causations = cl.generate_causations(params, rng)
    train = cl.generate_training_set(params, causations, rng=rng)
    assert len(train.instances) == 100 and train.valid_count() == 50
    model = cl.train_histogram(train)
    assert [c.id for c in model.causations] == [c.id for c in causations]
    test = cl.generate_test_set(params, causations, n=20, rng=rng)
    preds = [cl.predict_histogram(model, i.events) for i in test.instances]
    acc = cl.accuracy_of(preds, [i.causation_ids for i in test.instances])
    assert 0.0 <= acc <= 1.0


def test_mlp_and_gradient_check():
    params = cl.Params(6, 2, 1, 0)
    rng = cl.RandomSource(5)
    causations = cl.generate_causations(params, rng)
    train = cl.generate_training_set(params, causations, n_valid=10, n_invalid=10, rng=rng)
    cfg = cl.MlpConfig()
    cfg.epochs = 20
    cfg.hidden_units = 8
    model = cl.train_mlp(train, cfg)
    assert model.input_dim == 6 * params.instance_length
    assert cl.gradient_check(model, train) < 1e-4
    assert isinstance(cl.predict_mlp(model, train.instances[0].events, cfg, params), set)


def test_sweep_scores_and_tree():
    records = cl.run_sweep([15], [2, 4], [1, 2], [0, 1], [1, 2], [cl.Method.histogram])
    assert len(records) == 16
    counts = cl.aggregate_scores(records, cl.Method.histogram)
    assert counts.total() == 8
    back = cl.sweep_from_csv(cl.sweep_to_csv(records))
    assert [r.accuracy for r in back] == pytest.approx([r.accuracy for r in records], abs=1e-6)
    text = cl.decision_tree_text(records, cl.Method.histogram)
    assert text.startswith("|--- ")
    assert cl.tree_round_trips(text)


def test_score_class():
    assert cl.score_class(0.9) == cl.ScoreClass.Good
    assert cl.score_class(0.7) == cl.ScoreClass.Fair
    assert cl.score_class(0.69) == cl.ScoreClass.Poor


def test_errors_are_typed():
    with pytest.raises(cl.CauselabError, match="infeasible_parameters|invalid_argument"):
        cl.Params(0, 2, 2, 2)
    with pytest.raises(cl.CauselabError, match="no_positive_instances"):
        cl.estimate_cause_multiset([])
