#!/usr/bin/env python3
"""Fit and freeze the shipped classifier head.

Nearest-centroid calibration over the deterministic fixture corpus:
standardize fused features, place one centroid per label, express the
squared-distance score as a linear head (logits = W x + b), and pick a
softmax temperature so that

* held-out pure-label fixtures classify correctly with confidence
  comfortably above the 0.5 routing gate, and
* the blended fixture stays below 0.5 confidence with negative mass
  above 0.5, which routes to cognitive restructuring.

The folded head is written to src/innerself/data/head.json. Run from
the repository root after changing fixtures or feature extraction:

    python3 scripts/calibrate_head.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from innerself.conversation import select_strategy
from innerself.emotion import (
    classify,
    extract_audio_features,
    extract_text_features,
    fuse,
)
from innerself.emotion.classify import (
    LABELS,
    NEGATIVE_LABELS,
    ClassifierHead,
    EmotionLabel,
    FeatureVector,
)
from innerself.fixtures import (
    MIXED_TRANSCRIPT,
    calibration_set,
    fixture_clip,
    fixture_transcript,
    mixed_clip,
)
from innerself.lexicons import default_absolute_terms, default_valence_lexicon

TRAIN_SEEDS = range(8)
HOLDOUT_SEEDS = range(100, 104)
MIXED_SEEDS = range(4)
PURE_CONFIDENCE_FLOOR = 0.55
MIXED_CONFIDENCE_CEIL = 0.48
SIGMA_FLOOR = 1e-8

_VALENCE = default_valence_lexicon()
_ABSOLUTES = default_absolute_terms()

HEAD_PATH = Path(__file__).resolve().parents[1] / "src" / "innerself" / "data" / "head.json"


def fused_features(clip, transcript) -> np.ndarray:
    audio = extract_audio_features(clip)
    text = extract_text_features(transcript, _VALENCE, _ABSOLUTES)
    return fuse(audio, text).values


def z_logits(x: np.ndarray, mu, sigma, centroids) -> np.ndarray:
    z = (x - mu) / sigma
    return centroids @ z - 0.5 * np.sum(centroids**2, axis=1)


def confidence_at(logits: np.ndarray, tau: float) -> float:
    gaps = logits.max() - logits
    return 1.0 / np.sum(np.exp(-gaps / tau))


def solve_tau(logits: np.ndarray, target: float) -> float:
    """Temperature where the top softmax probability crosses ``target``."""
    lo, hi = 1e-3, 1e6
    for _ in range(200):
        mid = (lo * hi) ** 0.5
        if confidence_at(logits, mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo * hi) ** 0.5


def main() -> None:
    train = calibration_set(TRAIN_SEEDS)
    x_train = np.array([fused_features(c, t) for _, c, t in train])
    y_train = [label for label, _, _ in train]

    mu = x_train.mean(axis=0)
    sigma = np.maximum(x_train.std(axis=0), SIGMA_FLOOR)
    z_train = (x_train - mu) / sigma
    centroids = np.array(
        [
            z_train[[y is label for y in y_train]].mean(axis=0)
            for label in LABELS
        ]
    )

    holdout = []
    for label in LABELS:
        for seed in HOLDOUT_SEEDS:
            x = fused_features(fixture_clip(label, seed), fixture_transcript(label))
            holdout.append((label, z_logits(x, mu, sigma, centroids)))
    mixed = []
    for seed in MIXED_SEEDS:
        x = fused_features(mixed_clip(seed), MIXED_TRANSCRIPT)
        mixed.append(z_logits(x, mu, sigma, centroids))

    for label, logits in holdout:
        got = LABELS[int(np.argmax(logits))]
        assert got is label, f"holdout misclassified: wanted {label}, got {got}"
    for logits in mixed:
        got = LABELS[int(np.argmax(logits))]
        assert got in NEGATIVE_LABELS, f"mixed fixture argmax {got} is not negative"

    tau_upper = min(solve_tau(l, PURE_CONFIDENCE_FLOOR) for _, l in holdout)
    tau_lower = max(solve_tau(l, MIXED_CONFIDENCE_CEIL) for l in mixed)
    print(f"feasible temperature band: [{tau_lower:.4f}, {tau_upper:.4f}]")
    assert tau_lower < tau_upper, "no temperature separates pure and mixed fixtures"
    tau = (tau_lower * tau_upper) ** 0.5
    print(f"chosen temperature: {tau:.4f}")

    w_z = centroids / tau
    b_z = -0.5 * np.sum(centroids**2, axis=1) / tau
    w_raw = w_z / sigma
    b_raw = b_z - w_z @ (mu / sigma)
    head = ClassifierHead(w_raw, b_raw)

    # end-to-end verification through the public classify + routing path
    max_logit = 0.0
    expected_strategy = {
        EmotionLabel.ANXIETY: "immediate_reframe",
        EmotionLabel.ANGER: "immediate_reframe",
        EmotionLabel.SADNESS: "affirmation_support",
        EmotionLabel.SHAME_REGRET: "affirmation_support",
        EmotionLabel.NEUTRAL: "small_talk",
    }
    for label in LABELS:
        for seed in list(TRAIN_SEEDS) + list(HOLDOUT_SEEDS):
            x = fused_features(fixture_clip(label, seed), fixture_transcript(label))
            result = classify(FeatureVector(x, "fused"), head)
            max_logit = max(max_logit, float(np.max(np.abs(result.logits))))
            assert result.dominant is label, (label, seed, result.dominant)
            assert result.confidence >= 0.5, (label, seed, result.confidence)
            strategy = select_strategy(result)
            assert strategy.id == expected_strategy[label], (label, strategy.id)
        print(f"{label.value:>13}: ok, confidence >= 0.5, routes {expected_strategy[label]}")

    for seed in MIXED_SEEDS:
        x = fused_features(mixed_clip(seed), MIXED_TRANSCRIPT)
        result = classify(FeatureVector(x, "fused"), head)
        max_logit = max(max_logit, float(np.max(np.abs(result.logits))))
        assert result.dominant in NEGATIVE_LABELS
        assert result.confidence < 0.5, (seed, result.confidence)
        assert result.negative_mass() >= 0.5, (seed, result.negative_mass())
        strategy = select_strategy(result)
        assert strategy.id == "cognitive_restructuring", strategy.id
        print(
            f"    mixed s{seed}: dominant {result.dominant.value}"
            f" conf {result.confidence:.3f} neg {result.negative_mass():.3f}"
            " routes cognitive_restructuring"
        )

    print(f"max |logit| over fixtures: {max_logit:.2f}")
    assert max_logit < 1e4, "logits too close to the clamp"

    head.save(HEAD_PATH)
    print(f"wrote {HEAD_PATH}")


if __name__ == "__main__":
    main()
