import math
from collections import Counter

import numpy as np
import pytest

from nswcat.corpus import load_corpus
from nswcat.errors import FeatureError
from nswcat.features import (
    FREQ_WIDTH,
    REP_FREQ,
    REP_STAT,
    REP_UNION,
    STAT_WIDTH,
    UNION_WIDTH,
    FeatureMatrix,
    FrequencyVector,
    build_matrix,
    derived_features,
    frequency_vector,
    load_matrix,
    statistical_vector,
    union_vector,
)
from nswcat.lexer import NSWOccurrence, extract_nsws
from nswcat.taxonomy import SUPERCLASS_SLOTS

from stat_oracle import oracle_dispersion, oracle_stat_vector


def _occ(taxonomy, doc_id, name, start=0):
    return NSWOccurrence(doc_id, taxonomy.by_name[name], start, start + 1, "x")


def _freq_from_counts(counts, taxonomy, token_count=1000, doc_id="d"):
    values = np.concatenate(
        [counts, derived_features(np.asarray(counts, float), token_count, taxonomy)]
    )
    return FrequencyVector(doc_id, values)


# -------------------------------------------------------------- frequency


def test_frequency_vector_empty(taxonomy):
    fv = frequency_vector("d", [], 100, taxonomy)
    assert fv.values.shape == (FREQ_WIDTH,)
    assert not fv.values[:56].any()
    assert fv.values[56:60].sum() == 0  # superclass totals and total
    assert fv.values[60] == 100  # word total
    assert fv.values[65] == 0  # NSW-per-word coefficient


def test_frequency_vector_single_acronym(taxonomy):
    fv = frequency_vector("d", [_occ(taxonomy, "d", "acronym")], 50, taxonomy)
    slot = taxonomy.by_name["acronym"].id
    assert fv.values[slot] == 1
    assert fv.values[57] == 1  # string superclass total
    assert fv.values[59] == 1  # total NSWs
    assert fv.values[56] == 0 and fv.values[58] == 0


def test_frequency_vector_rejects_foreign_occurrence(taxonomy):
    with pytest.raises(FeatureError, match="passed for"):
        frequency_vector("d", [_occ(taxonomy, "other", "acronym")], 10, taxonomy)


def test_golden_document_hand_count(taxonomy, lexicon, rules, golden_annotations):
    # informative/doc03.txt plants exactly three road designations and two
    # traffic abbreviations; expected counts come from the annotation file,
    # not from the extractor.
    doc_id = "informative/doc03.txt"
    planted = [a for a in golden_annotations if a[0] == doc_id]
    expected = Counter(name for _, _, _, name, _ in planted)
    assert expected == Counter({"road_designation": 3, "traffic_abbrev": 2})

    from conftest import GOLDEN_CORPUS

    corpus = load_corpus(GOLDEN_CORPUS, lexicon.abbreviation_forms())
    doc = next(d for d in corpus if d.id == doc_id)
    fv = frequency_vector(
        doc.id, extract_nsws(doc, lexicon, rules), doc.token_count, taxonomy
    )
    counts = {t.name: fv.values[t.id] for t in taxonomy if fv.values[t.id]}
    assert counts == dict(expected)
    assert fv.values[58] == 5  # combined superclass total
    assert fv.values[59] == 5
    assert fv.values[60] == doc.token_count
    assert fv.values[65] == pytest.approx(5 / doc.token_count)
    road_group_slot = 56 + 10 + 8  # road is the 9th group in the fixed order
    assert fv.values[road_group_slot] == 3


# ---------------------------------------------------------------- derived


def test_derived_all_zero(taxonomy):
    out = derived_features(np.zeros(56), 50, taxonomy)
    assert out.shape == (29,)
    assert out[5] == 0  # distinct types
    assert out[6] == 56  # empty types
    assert out[8] == 0  # filled/empty ratio
    assert not out[10:].any()


def test_derived_one_of_each(taxonomy):
    out = derived_features(np.ones(56), 560, taxonomy)
    assert out[0] == 21 and out[1] == 15 and out[2] == 20
    assert out[3] == 56
    assert out[5] == 56 and out[6] == 0
    assert out[7] == 1.0
    assert out[8] == 0  # zero denominator convention
    assert out[9] == pytest.approx(0.1)


def test_derived_telephone_group_total(taxonomy):
    counts = np.zeros(56)
    counts[taxonomy.by_name["phone_short"].id] = 2
    counts[taxonomy.by_name["phone_long"].id] = 3
    out = derived_features(counts, 100, taxonomy)
    telephone = out[10 + 4]  # 5th group in the fixed order
    assert telephone == 5


def test_derived_superclass_totals_equal_slot_sums(taxonomy):
    rng = np.random.default_rng(5)
    for _ in range(50):
        counts = rng.integers(0, 7, size=56).astype(float)
        out = derived_features(counts, 100, taxonomy)
        assert out[1] == counts[SUPERCLASS_SLOTS["STRING"]].sum()
        assert out[0] == counts[SUPERCLASS_SLOTS["NUMBER"]].sum()
        assert out[2] == counts[SUPERCLASS_SLOTS["COMBINED"]].sum()
        assert out[3] == counts.sum()


# ------------------------------------------------------------- statistics


def test_statistics_constant_vector(taxonomy):
    fv = _freq_from_counts([3.0] * 56, taxonomy)
    sv = statistical_vector(fv)
    mean, rng, std, var, cv, kurt, skew = sv.values[:7]
    assert mean == 3 and rng == 0 and std == 0 and var == 0 and cv == 0
    assert kurt == 0 and skew == 0


def test_statistics_tiny_population_by_formula():
    assert oracle_dispersion([2, 4, 6])[:4] == [4.0, 4.0, math.sqrt(8 / 3), 8 / 3]


def test_statistics_asymmetric_pattern_matches_oracle(taxonomy):
    counts = [0.0] * 56
    counts[0], counts[1], counts[20], counts[40] = 9, 1, 4, 2
    sv = statistical_vector(_freq_from_counts(counts, taxonomy))
    expected = oracle_stat_vector(counts)
    assert sv.values == pytest.approx(expected, rel=1e-12)


def test_statistics_random_vectors_match_oracle(taxonomy):
    rng = np.random.default_rng(123)
    for _ in range(200):
        counts = rng.integers(0, 30, size=56).astype(float)
        got = statistical_vector(_freq_from_counts(list(counts), taxonomy)).values
        want = oracle_stat_vector(list(counts))
        for g, w in zip(got, want):
            assert math.isclose(g, w, rel_tol=1e-9, abs_tol=1e-12)


def test_statistics_variance_is_std_squared(taxonomy):
    rng = np.random.default_rng(7)
    counts = rng.integers(0, 9, size=56).astype(float)
    sv = statistical_vector(_freq_from_counts(list(counts), taxonomy)).values
    assert sv[3] == pytest.approx(sv[2] ** 2, rel=1e-9)
    for base in (7, 13, 19):  # superclass blocks: mean q3 q1 iq cqd cv
        q3, q1, iq, cqd = sv[base + 1], sv[base + 2], sv[base + 3], sv[base + 4]
        assert iq == pytest.approx(q3 - q1)
        assert iq >= 0
        if q3 + q1 > 0:
            assert cqd == pytest.approx(iq / (q3 + q1))


def test_statistics_permutation_invariance_within_slices(taxonomy):
    rng = np.random.default_rng(11)
    counts = rng.integers(0, 9, size=56).astype(float)
    base = statistical_vector(_freq_from_counts(list(counts), taxonomy)).values
    shuffled = counts.copy()
    rng.shuffle(shuffled[0:15])
    rng.shuffle(shuffled[15:36])
    rng.shuffle(shuffled[36:56])
    permuted = statistical_vector(_freq_from_counts(list(shuffled), taxonomy)).values
    assert permuted == pytest.approx(base, rel=1e-12)


def test_statistics_sensitive_across_slices(taxonomy):
    counts = np.zeros(56)
    counts[0] = 8.0
    base = statistical_vector(_freq_from_counts(list(counts), taxonomy)).values
    moved = np.zeros(56)
    moved[20] = 8.0  # same multiset overall, different slice
    other = statistical_vector(_freq_from_counts(list(moved), taxonomy)).values
    assert base[:7] == pytest.approx(other[:7])  # whole-vector part unchanged
    assert not np.allclose(base[7:], other[7:])


# ---------------------------------------------------------------- union


def test_union_width_and_order(taxonomy):
    fv = frequency_vector("d", [], 10, taxonomy)
    sv = statistical_vector(fv)
    u = union_vector(fv, sv)
    assert u.shape == (UNION_WIDTH,)
    assert (u[:FREQ_WIDTH] == fv.values).all()
    assert (u[FREQ_WIDTH:] == sv.values).all()


def test_union_zero_document(taxonomy):
    # Every slot of a zero-token, zero-count document is 0 except the
    # empty-type count, which is 56 by definition.
    fv = frequency_vector("d", [], 0, taxonomy)
    u = union_vector(fv, statistical_vector(fv))
    assert u[62] == 56
    u[62] = 0
    assert not u.any()


def test_union_doc_mismatch(taxonomy):
    fv = frequency_vector("a", [], 10, taxonomy)
    sv = statistical_vector(frequency_vector("b", [], 10, taxonomy))
    with pytest.raises(FeatureError, match="mismatch"):
        union_vector(fv, sv)


# ---------------------------------------------------------------- matrix


def test_build_matrix_widths(taxonomy, lexicon, rules, golden_corpus_path):
    corpus = load_corpus(golden_corpus_path, lexicon.abbreviation_forms())
    occurrences = {d.id: extract_nsws(d, lexicon, rules) for d in corpus}
    for rep, width in ((REP_FREQ, 85), (REP_STAT, 25), (REP_UNION, 110)):
        matrix = build_matrix(corpus.documents, occurrences, rep, taxonomy)
        assert matrix.values.shape == (30, width)
        assert matrix.labels == tuple(d.label for d in corpus)
        assert matrix.doc_ids == tuple(d.id for d in corpus)


def test_build_matrix_empty(taxonomy):
    matrix = build_matrix([], {}, REP_FREQ, taxonomy)
    assert matrix.values.shape == (0, 85)


def test_matrix_rejects_wrong_width():
    with pytest.raises(FeatureError, match="width"):
        FeatureMatrix(("d",), ("l",), REP_FREQ, np.zeros((1, 84)))


def test_matrix_save_load_bit_exact(tmp_path, taxonomy):
    rng = np.random.default_rng(3)
    values = rng.random((6, STAT_WIDTH)) * np.pi
    matrix = FeatureMatrix(
        tuple(f"c/d{i}" for i in range(6)),
        tuple("ababab"),
        REP_STAT,
        values,
    )
    path = tmp_path / "m.tsv"
    matrix.save(path)
    loaded = load_matrix(path)
    assert loaded.representation == REP_STAT
    assert loaded.doc_ids == matrix.doc_ids
    assert loaded.labels == matrix.labels
    assert (loaded.values == matrix.values).all()  # bitwise
    header = path.read_text("utf-8").splitlines()[0]
    assert header.split("\t")[:3] == ["doc_id", "label", "f0"]
