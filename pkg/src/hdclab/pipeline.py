"""End-to-end language identification: train on a corpus, evaluate a model.

A trained model is the encoder configuration, the item memory behind it,
and one prototype hypervector per language. Evaluation is per sentence;
sentences shorter than one n-gram are counted as skipped rather than
failing the run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assocmem import AssociativeMemory, ClassificationResult
from .encoder import EncoderConfig, TextEncoder
from .errors import ConfigurationError, TextTooShortError
from .faultlab import pairwise_from_dmat


@dataclass
class TrainedModel:
    """Everything needed to classify text: config, encoder, prototypes."""

    config: EncoderConfig
    encoder: TextEncoder
    memory: AssociativeMemory
    labels: list

    def classify_text(self, text: str) -> ClassificationResult:
        return self.memory.classify_full(self.encoder.encode(text))


def train_pipeline(corpus, config: EncoderConfig | None = None) -> TrainedModel:
    """Encode every training sample once and store per-label majorities.

    Labels are taken in sorted order, which fixes prototype row order and
    therefore tie behavior for good.
    """
    if config is None:
        config = EncoderConfig()
    if not corpus.train:
        raise ConfigurationError("corpus has no training samples")
    encoder = TextEncoder(config)
    memory = AssociativeMemory(config.dim, deterministic_ties=config.deterministic_ties)
    for label, text in corpus.train_items():
        try:
            memory.add(label, encoder.encode(text))
        except TextTooShortError as exc:
            raise TextTooShortError(f"training sample for {label!r}: {exc}") from None
    memory.rows()  # materialize prototypes now; training is over
    return TrainedModel(config=config, encoder=encoder, memory=memory,
                        labels=memory.labels)


def evaluate(model: TrainedModel, corpus, mode: str = "multiclass") -> dict:
    """Per-sentence accuracy report.

    multiclass scores the full argmin over all languages; pairwise scores
    every language pair on the sentences belonging to that pair and averages
    the 210 (for 21 languages) two-class accuracies.
    """
    if mode not in ("multiclass", "pairwise"):
        raise ConfigurationError(f"unknown evaluation mode {mode!r}")
    label_index = {label: i for i, label in enumerate(model.labels)}
    for label in corpus.test:
        if label not in label_index:
            raise ConfigurationError(f"test label {label!r} not in the model")

    dmat_rows, true_idx = [], []
    skipped = 0
    for true_label, sentence in corpus.test_items():
        try:
            hv = model.encoder.encode(sentence)
        except TextTooShortError:
            skipped += 1
            continue
        dmat_rows.append(model.memory.distances(hv))
        true_idx.append(label_index[true_label])
    if not dmat_rows:
        raise ConfigurationError("no usable test sentences")
    dmat = np.vstack(dmat_rows)
    true_idx = np.array(true_idx)

    pred_idx = np.argmin(dmat, axis=1)
    total = int(true_idx.shape[0])
    correct = int(np.sum(pred_idx == true_idx))
    per_language: dict = {}
    confusion: dict = {}
    for t, p in zip(true_idx, pred_idx):
        t_label, p_label = model.labels[t], model.labels[p]
        stats = per_language.setdefault(t_label, {"total": 0, "correct": 0})
        stats["total"] += 1
        if t == p:
            stats["correct"] += 1
        row = confusion.setdefault(t_label, {})
        row[p_label] = row.get(p_label, 0) + 1
    for stats in per_language.values():
        stats["accuracy"] = stats["correct"] / stats["total"]

    report = {
        "classifier": "hd",
        "mode": mode,
        "dim": model.config.dim,
        "n": model.config.n,
        "total": total,
        "correct": correct,
        "skipped_short": skipped,
        "accuracy": correct / total,
        "per_language": per_language,
        "confusion": confusion,
    }
    if mode == "pairwise":
        report["pairwise_accuracy"] = pairwise_from_dmat(dmat, true_idx)
    return report
