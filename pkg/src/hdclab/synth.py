"""Synthetic fallback corpus: languages faked with first-order Markov chains.

Each language gets its own random transition matrix over the 27-symbol
alphabet (softmax of Gaussian logits, temperature low enough that the
chains are far apart). Good enough to exercise the whole classification
pipeline when no real multilingual corpus is on disk.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .algebra import RandomSource
from .corpus import Corpus
from .encoder import DEFAULT_ALPHABET


def _softmax_rows(logits: np.ndarray) -> np.ndarray:
    z = np.exp(logits - logits.max(axis=-1, keepdims=True))
    return z / z.sum(axis=-1, keepdims=True)


class MarkovLanguage:
    """One synthetic language: start distribution plus transition matrix."""

    def __init__(self, num_symbols: int, rng: RandomSource, temperature: float = 0.7):
        gen = rng.generator
        self.start = _softmax_rows(gen.normal(size=num_symbols) / temperature)
        trans = _softmax_rows(gen.normal(size=(num_symbols, num_symbols)) / temperature)
        # Cumulative rows for inverse-transform sampling; force the final
        # column to 1 so float drift can never strand a uniform above it.
        self.cum_start = np.cumsum(self.start)
        self.cum_start[-1] = 1.0
        self.cum_trans = np.cumsum(trans, axis=1)
        self.cum_trans[:, -1] = 1.0

    def sample(self, length: int, rng: RandomSource) -> np.ndarray:
        """Symbol indices of one independent chain run."""
        if length < 1:
            raise ValueError("length must be >= 1")
        u = rng.generator.random(length)
        last = self.cum_start.shape[0] - 1
        first = min(int(np.searchsorted(self.cum_start, u[0], side="right")), last)
        out = np.empty(length, dtype=np.int64)
        out[0] = first
        if length > 1:
            out[1:] = kernels.markov_sample(self.cum_trans, first, u[1:])
        return out


def synth_corpus(num_languages: int = 21, alphabet: str = DEFAULT_ALPHABET,
                 train_chars: int = 20000, test_sentences: int = 30,
                 sentence_chars: int = 100, seed: int = 0,
                 temperature: float = 0.7) -> Corpus:
    """Generate a labeled Corpus of num_languages synthetic languages.

    Labels are lang00, lang01, ... so lexical order is stable. Every text
    and sentence is an independent chain run; seeds split per language and
    per sample, so any subset regenerates identically.
    """
    if num_languages < 2:
        raise ValueError("need at least two languages to classify")
    if train_chars < 3 or sentence_chars < 3:
        raise ValueError("texts must be at least one trigram long")
    symbols = np.array(list(alphabet))
    root = RandomSource(seed)
    corpus = Corpus()
    for li in range(num_languages):
        label = f"lang{li:02d}"
        lang = MarkovLanguage(len(alphabet), root.child(li, 0), temperature)
        train_idx = lang.sample(train_chars, root.child(li, 1))
        corpus.add_train(label, "".join(symbols[train_idx]))
        for si in range(test_sentences):
            sent_idx = lang.sample(sentence_chars, root.child(li, 2, si))
            corpus.add_test(label, "".join(symbols[sent_idx]))
    return corpus
