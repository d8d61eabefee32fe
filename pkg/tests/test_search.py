import json

import pytest

import homsuper as hs
from homsuper.search import SearchSpec, SearchSpaceError, run_search
from homsuper.serialize import algebra_to_document


def test_single_zero_candidate():
    spec = SearchSpec((1, 0), coeffs=("0",), suite="leibniz")
    outcome = run_search(spec)
    assert outcome.space_size == 1
    assert len(outcome.documents) == 1
    assert outcome.documents[0]["product"] == []
    assert not outcome.partial


def test_space_size_reported_before_running():
    spec = SearchSpec((2, 0), coeffs=("-1", "0", "1"))
    assert spec.space_size() == 3 ** 8
    spec11 = SearchSpec((1, 1), coeffs=("0", "1"))
    assert spec11.space_size() == 2 ** 4


def test_search_1_1_includes_odd_square(f2e):
    spec = SearchSpec((1, 1), coeffs=("0", "1"), suite="leibniz")
    outcome = run_search(spec)
    products = [tuple(tuple(e) for e in doc["product"])
                for doc in outcome.documents]
    assert ((2, 2, 1, "1"),) in products


def test_search_results_reverify_and_are_deterministic():
    spec = SearchSpec((1, 1), coeffs=("-1", "0", "1"), suite="leibniz")
    first = run_search(spec)
    second = run_search(spec)
    assert [d["name"] for d in first.documents] == \
        [d["name"] for d in second.documents]
    for doc in first.documents:
        algebra = spec.candidate(doc["metadata"]["candidate"])
        assert algebra_to_document(algebra)["product"] == doc["product"]
        assert all(r.passed for r in hs.check_suite("leibniz", algebra))


def test_search_respects_result_cap():
    spec = SearchSpec((1, 1), coeffs=("-1", "0", "1"), suite="leibniz",
                      max_results=2)
    outcome = run_search(spec)
    assert len(outcome.documents) == 2
    assert outcome.partial


def test_search_budget_flags_partial():
    spec = SearchSpec((2, 0), coeffs=("-1", "0", "1"), suite="leibniz",
                      budget_ms=0)
    outcome = run_search(spec)
    assert outcome.partial
    assert outcome.examined < spec.space_size()


def test_search_space_bound():
    spec = SearchSpec((2, 2), coeffs=("-1", "0", "1"), max_space=1000)
    with pytest.raises(SearchSpaceError):
        run_search(spec)


def test_diagonal_alpha_family_enumerates_maps():
    spec = SearchSpec((2, 0), coeffs=("0", "1"), alpha=("2", "4"),
                      suite="leibniz", max_results=10 ** 6)
    assert spec.space_size() == 4 * 2 ** 8
    outcome = run_search(spec)
    found = {(tuple(tuple(e) for e in doc["product"]),
              tuple(tuple(row) for row in doc["alpha"]))
             for doc in outcome.documents}
    # a*a=b is multiplicative under diag(d1,d2) iff d2 = d1*d1, so exactly
    # the diag(2,4) member of the family carries it.
    square = ((1, 1, 2, "1"),)
    assert (square, (("2", "0"), ("0", "4"))) in found
    assert (square, (("4", "0"), ("0", "2"))) not in found


def test_corpus_fixture_is_rediscoverable_from_its_index(corpus):
    fixture = dict(
        (path.name, algebra) for path, algebra in corpus
    )["leibniz_2_1_search.json"]
    spec = SearchSpec((2, 1), coeffs=("0", "1"), suite="leibniz")
    rebuilt = spec.candidate(fixture.metadata["candidate"])
    assert rebuilt.product == fixture.product
    assert rebuilt.alpha == fixture.alpha
    assert all(r.passed for r in hs.check_suite("leibniz", rebuilt))


def test_search_sound_and_complete_over_small_space():
    # Exhaustive audit: an assignment appears in the results iff it passes
    # the suite, over the whole 16-candidate space.
    spec = SearchSpec((1, 1), coeffs=("0", "1"), suite="leibniz")
    outcome = run_search(spec)
    returned = {doc["metadata"]["candidate"] for doc in outcome.documents}
    for index in range(spec.space_size()):
        algebra = spec.candidate(index)
        passes = all(r.passed for r in hs.check_suite("leibniz", algebra))
        assert (index in returned) == passes


def test_parallel_scan_matches_serial(monkeypatch):
    spec = SearchSpec((1, 1), coeffs=("-1", "0", "1"), suite="leibniz")
    serial = run_search(spec)
    monkeypatch.setenv("HOMSUPER_WORKERS", "2")
    parallel = run_search(spec)
    assert [d["product"] for d in serial.documents] == \
        [d["product"] for d in parallel.documents]
