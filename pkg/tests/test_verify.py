"""Corpus loading and the verify runner."""

import json

import pytest

from umbralops.corpus import load_corpus, random_generators, split_by_multiplier
from umbralops.verify import SUITES, run_verify


def test_corpus_shape():
    corpus = load_corpus()
    names = [name for name, _ in corpus]
    assert len(names) == len(set(names)) == 8
    tangent, general = split_by_multiplier(corpus)
    assert len(tangent) == 5
    assert len(general) == 3
    for _, f in corpus:
        assert f.order == 12
        assert f[0] == 0
        assert f[1] != 0


def test_corpus_from_explicit_path(tmp_path):
    manifest = tmp_path / "c.json"
    manifest.write_text(json.dumps([{"name": "x", "coeffs": ["1", "1/2"]}]))
    corpus = load_corpus(str(manifest), order=6)
    assert corpus[0][0] == "x"
    from fractions import Fraction

    assert corpus[0][1].coeffs[:3] == (Fraction(0), Fraction(1), Fraction(1, 2))


def test_random_generators_deterministic():
    a = random_generators(5, count=2)
    b = random_generators(5, count=2)
    assert [f for _, f in a] == [f for _, f in b]
    for _, f in a:
        assert f[1] == 1


def test_run_verify_single_suite():
    report = run_verify(suites="duality")
    assert report["schema_version"] == 1
    assert report["passed"]
    assert all(item["suite"] == "duality" for item in report["items"])


def test_run_verify_rejects_unknown_suite():
    with pytest.raises(ValueError):
        run_verify(suites="nope")


def test_run_verify_items_sorted():
    report = run_verify(suites="ode,itlog")
    keys = [(i["suite"], i["identity"], i["case"]) for i in report["items"]]
    assert keys == sorted(keys)


def test_all_suite_names_runnable():
    assert set(SUITES) == {
        "formulas",
        "duality",
        "itlog",
        "ode",
        "genfun",
        "group",
        "coeff",
        "kernel",
        "laguerre",
        "float",
    }
