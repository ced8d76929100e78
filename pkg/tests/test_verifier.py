import json

import pytest

from principal_subspaces.ideal_engine import IdealSpec, Window, graded_indices, quotient_dim
from principal_subspaces.upbw import AffineWeight, GradedIndex, loop_algebra
from principal_subspaces.verifier import (FIELDS, MISMATCH, PASS, UNSTABLE, all_weights,
                                          default_budget, lemma_check_sigma, lemma_check_tau,
                                          principal_dim, qseries, translation_images,
                                          verify_presentation)

from oracles import fermionic_dims


def W(*c):
    return AffineWeight(c)


def test_principal_dim_examples():
    assert principal_dim(W(1, 0, 0), GradedIndex(1, (1, 0))) == 1
    assert principal_dim(W(0, 1, 0), GradedIndex(1, (1, 0))) == 0
    assert principal_dim(W(1, 0, 0), GradedIndex(2, (2, 0))) == 0


@pytest.mark.parametrize("coords,dims", [
    ((1, 0, 0), [1, 3, 4, 7, 13]),
    ((0, 1, 0), None),
    ((0, 1, 1), [1, 2, 4, 9, 17]),
])
def test_verify_examples(coords, dims):
    w = W(*coords)
    rep = verify_presentation(2, w.level, w, 4)
    assert rep.status == PASS and rep.passed
    assert rep.claim == "theorem"
    if dims:
        assert rep.dims_by_weight() == dims


def test_vacuum_dims_match_fermionic_sum():
    rep = verify_presentation(2, 1, W(1, 0, 0), 4)
    want = [0] * 5
    for (w, _), c in fermionic_dims(2, 0, 4).items():
        want[w] += c
    assert rep.dims_by_weight() == want


def test_quotient_never_below_principal():
    for w in all_weights(2, 2):
        rep = verify_presentation(2, 2, w, 4)
        for c in rep.components:
            assert c.quotient_dim >= c.principal_dim
            assert c.ideal_rank <= c.ambient


def test_detects_missing_generator():
    # I_{Lambda_0} alone does not kill x_{alpha_1}(-1) v_{Lambda_1}
    g = GradedIndex(1, (1, 0))
    assert quotient_dim(IdealSpec.vacuum(2, 1), g, Window(w_max=1)) == 1
    assert principal_dim(W(0, 1, 0), g) == 0


def test_unstable_when_growth_is_capped():
    w = W(1, 0, 0)
    rep = verify_presentation(2, 1, w, 4, window=Window(w_max=4, t_max=1, growth_cap=0))
    assert rep.status in (UNSTABLE, PASS)
    rep = verify_presentation(2, 1, w, 4, window=Window(w_max=4, t_max=2, growth_cap=0))
    assert rep.status == UNSTABLE


def test_report_schema_and_determinism():
    w = W(1, 1, 0)
    a = verify_presentation(2, 2, w, 3)
    b = verify_presentation(2, 2, w, 3, jobs=2)
    assert a.to_json() == b.to_json()
    assert a.to_tsv() == b.to_tsv()
    data = json.loads(a.to_json())
    assert list(data["components"][0]) == list(FIELDS)
    assert data["summary"]["status"] == PASS
    assert a.to_tsv().splitlines()[0].split("\t") == list(FIELDS)


def test_charge_cap_skips_components():
    w = W(1, 0, 0)
    rep = verify_presentation(2, 1, w, 4, charge_max=2)
    assert rep.skipped > 0
    assert all(c.index.total_charge <= 2 for c in rep.components)


def test_rank_three_labelled_conjecture():
    rep = verify_presentation(3, 1, W(1, 0, 0, 0), 2)
    assert rep.claim == "conjecture" and rep.status == PASS


def test_rejects_inconsistent_arguments():
    with pytest.raises(ValueError):
        verify_presentation(2, 2, W(1, 0, 0), 3)


def test_qseries_examples():
    q = qseries(W(1, 0, 0), 2)
    assert q[GradedIndex(0, (0, 0))] == 1
    assert q[GradedIndex(1, (1, 0))] == 1
    assert GradedIndex(1, (1, 0)) not in qseries(W(0, 1, 0), 2)


def test_qseries_translation_invariant():
    # b v_Lambda -> e_lambda1 b v_Lambda is injective and lands in the cyclic image;
    # the tau map reindexes gradings, so the graded pieces have matching ranks
    for w in all_weights(2, 2):
        assert translation_images(w, 1, "lambda", 3) == []


def test_tau_lemma_examples():
    rep = lemma_check_tau(1, W(1, 0, 0), 3)
    assert rep.passed
    by_gen = {r.generator: r for r in rep.results}
    alg = loop_algebra(2)
    image = alg.tau_affine(1, (1, 1), W(1, 0, 0), alg.x(0, 0))
    assert image == alg.x(0, -1)
    assert any(k.startswith("tau1 R^1_(-1,2)") for k in by_gen)
    r_img = alg.tau_affine(1, (1, 1), W(1, 0, 0), alg.x(0, -1) ** 2)
    assert r_img == alg.x(0, -2) ** 2


def test_sigma_lemma_examples():
    rep = lemma_check_sigma(2, 1, 1, 3)
    assert rep.passed
    with pytest.raises(ValueError):
        lemma_check_sigma(2, 1, 2, 3)


def test_default_budgets():
    assert default_budget(2, 1) == (6, 6)
    assert default_budget(2, 2) == (5, None)
    assert default_budget(2, 3)[0] == 4 and default_budget(3, 1)[0] == 4
