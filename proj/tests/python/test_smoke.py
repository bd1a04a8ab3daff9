"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import woundassess as wa


def test_banding_and_reading():
    assert wa.band_body_temp(34.0) == wa.WoundTempBand.Hypothermia
    assert wa.band_body_temp(36.8) == wa.WoundTempBand.Normal
    assert wa.band_spo2(93.0) == wa.OxygenBand.Hypoxemia
    assert wa.band_humidity(85.0) == wa.HumidityBand.Wet

    reading = wa.SensorReading(0, 39.0, 24.0, 19.0, 90.2)
    obs = wa.band_reading(reading)
    assert obs.wound_temp == wa.WoundTempBand.Hyperthermia
    assert obs.air_temp == wa.AirTempBand.High
    assert obs.humidity == wa.HumidityBand.Dry
    assert obs.spo2 == wa.OxygenBand.Hypoxemia

    with pytest.raises(ValueError):
        wa.band_humidity(-3.0)


def test_rules_and_labels():
    rules = wa.rule_table()
    assert len(rules) == 22
    for rule in rules:
        obs = wa.BandedObservation(rule.wound_temp, rule.air_temp, rule.humidity, rule.spo2)
        assert wa.label(obs) == rule.assessment

    combos = wa.all_combinations()
    assert len(combos) == 108
    assert wa.lookup_rule(combos[0]) is not None or wa.label(combos[0]) is not None


def test_entropy_and_gain():
    assert abs(wa.entropy(wa.ClassCounts(172, 84, 394)) - 1.327) <= 0.005
    assert wa.entropy(wa.ClassCounts(0, 0, 117)) == 0.0
    assert abs(wa.max_entropy(3) - math.log2(3)) < 1e-12

    ds = wa.exhaustive_dataset()
    gains = {f: wa.information_gain(ds, f) for f in
             (wa.FeatureId.WoundTemp, wa.FeatureId.AirTemp,
              wa.FeatureId.Humidity, wa.FeatureId.SpO2)}
    assert max(gains, key=gains.get) == wa.FeatureId.WoundTemp


def test_tree_round_trip_and_oracle_agreement():
    ds = wa.exhaustive_dataset()
    tree = wa.induce(ds)
    for combo in wa.all_combinations():
        assert wa.predict(tree, combo) == wa.label(combo)
        proba = wa.predict_proba(tree, combo)
        assert abs(sum(proba) - 1.0) < 1e-12

    doc = wa.serialize(tree)
    back = wa.deserialize(doc)
    assert wa.tree_equal(tree, back)
    assert "split WoundTemp" in wa.render(tree)


def test_generation_and_metrics():
    spec = wa.reference_training_spec()
    spec.seed = 6
    ds = wa.generate_dataset(spec)
    assert len(ds) == 650
    assert ds.class_counts.n == [172, 84, 394]

    tree = wa.induce(ds)
    truth = [row.assessment for row in ds.rows]
    predicted = [wa.predict(tree, row.bands) for row in ds.rows]
    cm = wa.confusion(truth, predicted)
    assert wa.accuracy(cm) == 1.0

    scores = [wa.predict_proba(tree, row.bands) for row in ds.rows]
    macro = wa.macro_auc(scores, truth)
    assert macro == 1.0

    m = wa.batch_metrics(wa.BatchOutcome(49, 1, 44, 6))
    assert wa.report_percent(m.precision) == 89
    assert wa.report_percent(m.recall) == 98


def test_preprocess():
    lo, hi = wa.fit_min_max([36.0, 36.2, 36.5])
    assert (lo, hi) == (36.0, 36.5)
    p = wa.NormalizationParams(36.0, 38.0)
    assert wa.min_max_normalize(37.0, p) == pytest.approx(0.5)

    idx = wa.sample_indices(150, 50, 1234)
    assert len(idx) == len(set(idx)) == 50
    assert idx == wa.sample_indices(150, 50, 1234)


def test_simulator():
    profiles = wa.default_case_profiles()
    assert len(profiles) == 5
    rows = wa.simulate_patient(profiles[0], 10, 3)
    assert len(rows) == 10
    assert rows[1].timestamp - rows[0].timestamp == profiles[0].interval_s
    assert len(wa.case_fixtures()) == 25
