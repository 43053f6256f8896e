"""Acceptance gate: one test per release criterion, in order.

Each test enforces a single end-to-end guarantee of the pipeline at a
pinned tolerance and a wall-clock budget, so a verbose run reads as a
per-criterion pass/fail checklist.  Oracles here are written
independently of the library code they check (naive KNN search, dense
eigendecomposition, Mann-Whitney-free recomputation of score/grade).
"""

import hashlib
import json
import random
import subprocess
import sys
import time
from collections import Counter

import numpy as np
import pytest
from fastapi.testclient import TestClient

from policygrader.classify import (
    LABELS,
    PointLabel,
    compute_metrics,
    knn_fit,
    knn_predict,
)
from policygrader.config import AppConfig
from policygrader.dataset import SplitSpec, load as load_dataset, split as split_dataset
from policygrader.dimred import pca2
from policygrader.embed import EmbedderConfig, embed, embed_batch
from policygrader.model_io import load_model
from policygrader.score_grade import (
    CountSummary,
    GradeThresholds,
    ScoreWeights,
    grade,
    score,
)
from policygrader.service import train_pipeline
from policygrader.summarize import SummarizerConfig, plan_budget, summarize_document
from policygrader.textprep import PERMITTED_CHARS, clean, split_paragraphs

_WORDS = (
    "data service account information consent cookie privacy terms user "
    "collect share delete third party advertising arbitration browser "
    "policy right agree store process session tracking profile legal"
).split()


def budgeted(seconds: float):
    """Record a start time and return a callable that asserts the budget."""
    start = time.perf_counter()

    def check():
        elapsed = time.perf_counter() - start
        assert elapsed < seconds, f"exceeded {seconds}s budget: {elapsed:.2f}s"

    return check


def test_criterion_01_scoring_formula_exactness():
    done = budgeted(1.0)
    rng = random.Random(0xC0FFEE)
    weights = ScoreWeights()

    for _ in range(1000):
        g, n, b, bl = (rng.randint(0, 200) for _ in range(4))
        counts = CountSummary(good=g, neutral=n, bad=b, blocker=bl)
        assert score(counts, weights) == g - b - 3 * bl

    done()


def test_criterion_02_summary_tier_table():
    done = budgeted(1.0)
    word_counts = (60, 75, 76, 100, 101, 200, 201, 400, 401, 450)
    expected = (None, None, 50, 50, 75, 75, 100, 100, 200, 200)

    assert tuple(plan_budget(c).max_words for c in word_counts) == expected

    done()


def test_criterion_03_builtin_summary_budget_compliance():
    done = budgeted(30.0)
    rng = random.Random(31337)
    texts = []
    for _ in range(500):
        n_words = rng.randint(1, 600)
        tokens = []
        for _ in range(n_words):
            word = rng.choice(_WORDS)
            if rng.random() < 0.15:
                word += rng.choice(".?!")
            tokens.append(word)
        texts.append(" ".join(tokens))

    paragraphs = split_paragraphs(texts)
    assert len(paragraphs) == 500
    summaries = summarize_document(paragraphs, SummarizerConfig())
    assert len(summaries) == 500

    for paragraph, summary in zip(paragraphs, summaries):
        cap = plan_budget(paragraph.word_count).max_words
        if cap is None:
            assert summary.text == paragraph.text
        else:
            assert summary.word_count <= cap
        assert summary.word_count == len(summary.text.split())
        assert not summary.degraded

    done()


def test_criterion_04_cleaning_idempotence_and_charset():
    done = budgeted(30.0)
    rng = random.Random(9001)
    fragments = (
        "<p class='a'>", "</p>", "<strong>", "</strong>", "<br/>",
        "<script>var x = 1;</script>", "<style>p { color: red }</style>",
        "&amp;", "&lt;", "&quot;", "&#65;", "&nbsp;",
        "Café", "Rosé", "naïve", "Zürich", "señor", "Åland",
        "PRIVACY", "Terms", "user's", "e.g.", "5%", "$10", "[note]",
        "隐私", "条款", "🙂", "—", "“quoted”", "a\tb", "x\n\ny",
        "  double  spaces  ", "trailing.", "?!", "USER-DATA", "a;b:c,",
    )

    violations = 0
    for _ in range(1000):
        raw = " ".join(rng.choice(fragments) for _ in range(rng.randint(1, 25)))
        cleaned = clean(raw)
        if clean(cleaned) != cleaned:
            violations += 1
        if not set(cleaned) <= PERMITTED_CHARS:
            violations += 1
        if "  " in cleaned or cleaned != cleaned.strip():
            violations += 1

    assert violations == 0
    done()


def test_criterion_05_embedding_contract(tmp_path):
    done = budgeted(10.0)
    cfg = EmbedderConfig()
    texts = [
        "we sell your browsing history to advertisers",
        "you can delete your account at any time",
        "cookies keep you signed in during a session",
        "binding arbitration is mandatory for all disputes",
    ]

    vectors = embed_batch(texts, cfg)
    for vector in vectors:
        assert vector.values.shape == (768,)
        assert abs(float(np.linalg.norm(vector.values)) - 1.0) <= 1e-6
    assert embed(texts[0], cfg).values.shape == (768,)

    script = (
        "import hashlib, json, sys\n"
        "from policygrader.embed import EmbedderConfig, embed_batch\n"
        "texts = json.loads(sys.argv[1])\n"
        "vectors = embed_batch(texts, EmbedderConfig())\n"
        "digest = hashlib.sha256(b''.join(v.values.tobytes() for v in vectors))\n"
        "print(digest.hexdigest())\n"
    )
    runs = [
        subprocess.run(
            [sys.executable, "-c", script, json.dumps(texts)],
            capture_output=True,
            text=True,
            check=True,
        ).stdout.strip()
        for _ in range(2)
    ]

    local = hashlib.sha256(b"".join(v.values.tobytes() for v in vectors)).hexdigest()
    assert runs[0] == runs[1] == local

    done()


def _oracle_knn(train_vectors, train_labels, k, query):
    """Naive reference: full sort of (squared distance, index) pairs."""
    ranked = sorted(
        range(len(train_vectors)),
        key=lambda i: (float(np.sum((train_vectors[i] - query) ** 2)), i),
    )[:k]
    votes = Counter(train_labels[i] for i in ranked)
    top = max(votes.values())
    tied = {label for label, count in votes.items() if count == top}
    label = next(train_labels[i] for i in ranked if train_labels[i] in tied)
    scores = {lab: votes.get(lab, 0) / k for lab in LABELS}
    return label, scores


def test_criterion_06_knn_oracle_equivalence():
    done = budgeted(60.0)
    rng = np.random.default_rng(20240517)

    for _ in range(1000):
        n = int(rng.integers(3, 26))
        dim = int(rng.integers(1, 7))
        k = int(rng.integers(1, n + 1))
        # Quantized coordinates force frequent distance and vote ties.
        vectors = np.round(rng.normal(0.0, 1.0, size=(n, dim)) * 4) / 4
        labels = [LABELS[int(i)] for i in rng.integers(0, 4, size=n)]
        query = np.round(rng.normal(0.0, 1.0, size=dim) * 4) / 4

        model = knn_fit(list(zip(vectors, labels)), k=k)
        prediction = knn_predict(model, query)
        oracle_label, oracle_scores = _oracle_knn(vectors, labels, k, query)

        assert prediction.label == oracle_label
        assert prediction.scores == oracle_scores

    done()


def test_criterion_07_weighted_recall_equals_accuracy():
    done = budgeted(10.0)
    rng = np.random.default_rng(777)

    for _ in range(200):
        n = int(rng.integers(1, 80))
        y_true = [LABELS[int(i)] for i in rng.integers(0, 4, size=n)]
        y_pred = [LABELS[int(i)] for i in rng.integers(0, 4, size=n)]
        y_scores = []
        for pred in y_pred:
            weights = rng.random(4)
            weights[LABELS.index(pred)] += 1.0  # argmax matches the prediction
            weights /= weights.sum()
            y_scores.append(dict(zip(LABELS, map(float, weights))))

        row = compute_metrics(y_true, y_pred, y_scores)
        accuracy = sum(t == p for t, p in zip(y_true, y_pred)) / n
        assert abs(row.recall - row.accuracy) <= 1e-12
        assert abs(row.accuracy - accuracy) <= 1e-12

    done()


def _oracle_pca2(matrix):
    """Dense eigendecomposition reference with the same sign convention."""
    centered = matrix - matrix.mean(axis=0)
    cov = centered.T @ centered / (matrix.shape[0] - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues)[::-1][:2]
    components = eigenvectors[:, order].T.copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1
    return centered @ components.T


def test_criterion_08_pca_oracle():
    done = budgeted(60.0)
    rng = np.random.default_rng(4242)

    for _ in range(100):
        n = int(rng.integers(3, 51))
        dim = int(rng.integers(2, 33))
        matrix = rng.normal(0.0, 1.0, size=(n, dim))

        points, (ev1, ev2) = pca2(matrix)
        assert np.max(np.abs(points - _oracle_pca2(matrix))) <= 1e-6
        assert ev1 >= ev2 >= 0.0

        # Recover the projection operator the implementation applied; its
        # columns must be orthonormal axes.
        centered = matrix - matrix.mean(axis=0)
        recovered = np.linalg.pinv(centered) @ points
        gram = recovered.T @ recovered
        assert np.max(np.abs(gram - np.eye(2))) <= 1e-9

    done()


def test_criterion_09_split_arithmetic_and_determinism(tmp_path):
    done = budgeted(10.0)
    path = tmp_path / "synthetic.ndjson"
    with open(path, "w", encoding="utf-8") as handle:
        for i in range(4160):
            record = {
                "point": LABELS[i % 4].value,
                "quoteDoc": "Terms of Service",
                "quoteText": f"synthetic clause {i} about data handling",
            }
            handle.write(json.dumps(record) + "\n")

    dataset = load_dataset(str(path))
    assert len(dataset.points) == 4160

    spec = SplitSpec(train_fraction=0.8, seed=11)
    train_a, test_a = split_dataset(dataset, spec)
    train_b, test_b = split_dataset(dataset, spec)

    assert (len(train_a.points), len(test_a.points)) == (3328, 832)
    assert [p.quote_text for p in train_a.points] == [p.quote_text for p in train_b.points]
    assert [p.quote_text for p in test_a.points] == [p.quote_text for p in test_b.points]

    union = sorted(p.quote_text for p in train_a.points + test_a.points)
    assert union == sorted(p.quote_text for p in dataset.points)

    done()


def test_criterion_10_end_to_end_training_determinism(mini_corpus_path, tmp_path):
    done = budgeted(60.0)
    artifacts, rows = [], []
    for run in (1, 2):
        out = str(tmp_path / f"run{run}.model.json")
        artifact, row = train_pipeline(
            mini_corpus_path,
            SplitSpec(train_fraction=0.8, seed=42),
            SummarizerConfig(),
            EmbedderConfig(),
            "knn",
            out,
        )
        artifacts.append(open(out, "rb").read())
        rows.append(row)

    assert artifacts[0] == artifacts[1]
    assert rows[0] == rows[1]
    assert rows[0].accuracy >= 0.5  # majority baseline on the fixture is 0.25

    done()


def test_criterion_11_service_round_trip(mini_corpus_path, tmp_path):
    done = budgeted(30.0)
    model_path = str(tmp_path / "service.model.json")
    train_pipeline(
        mini_corpus_path,
        SplitSpec(train_fraction=0.8, seed=42),
        SummarizerConfig(),
        EmbedderConfig(),
        "knn",
        model_path,
    )

    from policygrader.service import create_app

    client = TestClient(create_app(load_model(model_path), AppConfig()))
    payload = {
        "url": "https://example.org",
        "documents": [
            {
                "source": "https://example.org/privacy",
                "kind": "privacy_policy",
                "paragraphs": [
                    "We sell your browsing history and purchase records to "
                    "advertisers and data brokers.",
                    "You can delete your account at any time and we will "
                    "erase all associated personal data.",
                    "By using the service you waive your right to sue and "
                    "accept binding arbitration.",
                ],
            }
        ],
    }

    first = client.post("/v1/analyze", json=payload)
    assert first.status_code == 200
    body = first.json()

    labels = [item["label"] for item in body["items"]]
    counts = body["counts"]
    for name in ("good", "neutral", "bad", "blocker"):
        assert counts[name] == labels.count(name)
    assert counts["total"] == len(labels) == 3

    recomputed = CountSummary(
        good=counts["good"],
        neutral=counts["neutral"],
        bad=counts["bad"],
        blocker=counts["blocker"],
    )
    assert body["score"] == score(recomputed, ScoreWeights())
    assert body["grade"] == grade(
        body["score"], recomputed.total, GradeThresholds()
    ).value

    second = client.post("/v1/analyze", json=payload)
    assert second.status_code == 200
    assert first.content == second.content

    empty = client.post(
        "/v1/analyze", json={"documents": [{"paragraphs": ["<script>x</script>"]}]}
    )
    assert empty.status_code == 422

    malformed = client.post(
        "/v1/analyze",
        content=b'{"documents": [',
        headers={"content-type": "application/json"},
    )
    assert malformed.status_code == 400

    done()
