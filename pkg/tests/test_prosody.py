"""Prosody parameter blending and the target table."""

import json

import pytest
from hypothesis import given, strategies as st

from innerself.conversation import (
    NEUTRAL_PROSODY,
    ProsodyParams,
    ProsodyTable,
    default_prosody_table,
    prosody_for_emotion,
)
from innerself.conversation.prosody import GAIN_RANGE, PITCH_RANGE, RATE_RANGE
from innerself.emotion import EmotionLabel, EmotionResult
from innerself.errors import TableFormatError


def single_label(label, confidence):
    rest = (1.0 - confidence) / 4.0
    return EmotionResult.from_probabilities(
        {l.value: (confidence if l is label else rest) for l in EmotionLabel}
    )


class TestProsodyParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"pitch_shift": 4.5},
            {"pitch_shift": -4.5},
            {"volume_gain": 7.0},
            {"rate": 0.5},
            {"rate": 1.21},
        ],
    )
    def test_out_of_range_rejected(self, kwargs):
        with pytest.raises(ValueError):
            ProsodyParams(**kwargs)

    def test_boundaries_allowed(self):
        ProsodyParams(4.0, 6.0, 1.2)
        ProsodyParams(-4.0, -6.0, 0.8)

    def test_dict_round_trip(self):
        p = ProsodyParams(-1.5, -3.0, 0.88)
        assert ProsodyParams.from_dict(p.to_dict()) == p


class TestBlending:
    def test_neutral_is_exact_identity(self):
        params = prosody_for_emotion(single_label(EmotionLabel.NEUTRAL, 0.9))
        assert params == NEUTRAL_PROSODY
        assert (params.pitch_shift, params.volume_gain, params.rate) == (
            0.0, 0.0, 1.0,
        )

    def test_full_confidence_hits_the_target(self):
        result = EmotionResult.from_probabilities(
            {l.value: (1.0 if l is EmotionLabel.ANGER else 0.0)
             for l in EmotionLabel}
        )
        params = prosody_for_emotion(result)
        assert params.pitch_shift == pytest.approx(-1.5)
        assert params.volume_gain == pytest.approx(-3.0)
        assert params.rate == pytest.approx(0.88)

    def test_blend_scales_with_confidence(self):
        params = prosody_for_emotion(single_label(EmotionLabel.ANXIETY, 0.6))
        assert params.pitch_shift == pytest.approx(0.6 * -1.0)
        assert params.volume_gain == pytest.approx(0.6 * -2.0)
        assert params.rate == pytest.approx(1.0 + 0.6 * (0.9 - 1.0))

    @given(
        st.sampled_from(list(EmotionLabel)),
        st.floats(min_value=0.21, max_value=1.0),
    )
    def test_always_inside_legal_intervals(self, label, confidence):
        params = prosody_for_emotion(single_label(label, confidence))
        assert PITCH_RANGE[0] <= params.pitch_shift <= PITCH_RANGE[1]
        assert GAIN_RANGE[0] <= params.volume_gain <= GAIN_RANGE[1]
        assert RATE_RANGE[0] <= params.rate <= RATE_RANGE[1]

    def test_sadness_softens_upward(self):
        params = prosody_for_emotion(single_label(EmotionLabel.SADNESS, 0.8))
        assert params.pitch_shift > 0
        assert params.rate < 1.0


class TestProsodyTable:
    def test_shipped_table_covers_all_labels(self):
        table = default_prosody_table()
        assert set(table.targets) == set(EmotionLabel)

    def test_missing_label_rejected(self):
        targets = dict(default_prosody_table().targets)
        del targets[EmotionLabel.ANGER]
        with pytest.raises(TableFormatError, match="missing"):
            ProsodyTable(targets)

    def test_nonidentity_neutral_rejected(self):
        targets = dict(default_prosody_table().targets)
        targets[EmotionLabel.NEUTRAL] = (0.5, 0.0, 1.0)
        with pytest.raises(TableFormatError, match="neutral"):
            ProsodyTable(targets)

    def test_out_of_range_target_rejected(self):
        targets = dict(default_prosody_table().targets)
        targets[EmotionLabel.ANGER] = (-5.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            ProsodyTable(targets)

    def test_load_rejects_unknown_label(self, tmp_path):
        path = tmp_path / "prosody.json"
        doc = {l.value: [0.0, 0.0, 1.0] for l in EmotionLabel}
        doc["joy"] = [1.0, 1.0, 1.0]
        path.write_text(json.dumps(doc))
        with pytest.raises(TableFormatError, match="joy"):
            ProsodyTable.load(path)

    def test_load_rejects_bad_triple(self, tmp_path):
        path = tmp_path / "prosody.json"
        doc = {l.value: [0.0, 0.0, 1.0] for l in EmotionLabel}
        doc["anger"] = [1.0, 1.0]
        path.write_text(json.dumps(doc))
        with pytest.raises(TableFormatError):
            ProsodyTable.load(path)
