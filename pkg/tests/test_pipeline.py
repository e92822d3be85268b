import numpy as np
import pytest

from hdclab import (
    ConfigurationError,
    Corpus,
    EncoderConfig,
    TextTooShortError,
    evaluate,
    train_pipeline,
)


def tiny_corpus():
    corpus = Corpus()
    corpus.add_train("aa", "abc abc abcabc abca bcabc abc")
    corpus.add_train("bb", "xyz xyzxyz zyx xyzzy xyz yzx")
    corpus.add_test("aa", "abcabc abc")
    corpus.add_test("bb", "xyzxyz xyz")
    return corpus


def test_train_stores_sorted_labels():
    model = train_pipeline(tiny_corpus(), EncoderConfig(dim=2000))
    assert model.labels == ["aa", "bb"]
    assert len(model.memory) == 2


def test_empty_corpus_rejected():
    with pytest.raises(ConfigurationError):
        train_pipeline(Corpus(), EncoderConfig(dim=500))


def test_short_training_sample_names_label():
    corpus = Corpus()
    corpus.add_train("xx", "ab")
    with pytest.raises(TextTooShortError, match="xx"):
        train_pipeline(corpus, EncoderConfig(dim=500))


def test_training_is_single_pass():
    corpus = tiny_corpus()
    model = train_pipeline(corpus, EncoderConfig(dim=1000))
    total_chars = sum(len(t) for _, t in corpus.train_items())
    assert model.encoder.symbols_consumed == total_chars


def test_classify_text():
    model = train_pipeline(tiny_corpus(), EncoderConfig(dim=4000))
    res = model.classify_text("abc abcabc abc")
    assert res.label == "aa"
    assert len(res.all_distances) == 2


def test_self_evaluation_is_perfect():
    corpus = tiny_corpus()
    # test on the training texts themselves
    selfcheck = Corpus(train=corpus.train,
                       test={lb: list(ts) for lb, ts in corpus.train.items()})
    model = train_pipeline(corpus, EncoderConfig(dim=4000))
    report = evaluate(model, selfcheck)
    assert report["accuracy"] == 1.0


def test_single_sentence_report():
    corpus = tiny_corpus()
    corpus.test = {"aa": ["abc abc"]}
    model = train_pipeline(corpus, EncoderConfig(dim=2000))
    report = evaluate(model, corpus)
    assert report["total"] == 1
    assert report["accuracy"] in (0.0, 1.0)


def test_unknown_test_label_rejected():
    corpus = tiny_corpus()
    corpus.test["cc"] = ["some sentence"]
    model = train_pipeline(corpus, EncoderConfig(dim=2000))
    with pytest.raises(ConfigurationError, match="cc"):
        evaluate(model, corpus)


def test_short_sentences_counted_as_skipped():
    corpus = tiny_corpus()
    corpus.test["aa"].append("ab")
    model = train_pipeline(corpus, EncoderConfig(dim=2000))
    report = evaluate(model, corpus)
    assert report["skipped_short"] == 1
    assert report["total"] == 2


def test_bad_mode():
    model = train_pipeline(tiny_corpus(), EncoderConfig(dim=1000))
    with pytest.raises(ConfigurationError):
        evaluate(model, tiny_corpus(), mode="zigzag")


def test_pairwise_report_contains_both_metrics(synth, trained):
    report = evaluate(trained, synth, mode="pairwise")
    assert "pairwise_accuracy" in report
    assert report["pairwise_accuracy"] >= report["accuracy"] - 0.01


def test_deterministic_retraining(synth, trained):
    again = train_pipeline(synth, EncoderConfig(dim=10000))
    assert np.array_equal(again.memory.rows(), trained.memory.rows())


def test_confusion_matrix_sums(synth, trained):
    report = evaluate(trained, synth)
    total = sum(sum(row.values()) for row in report["confusion"].values())
    assert total == report["total"] == 630
