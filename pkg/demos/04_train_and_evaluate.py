"""
Training and comparing the three classifiers
============================================

The bundled mini corpus holds 40 labeled policy snippets, ten per class
(good / neutral / bad / blocker).  We split it 80/20 with a seeded
shuffle, push both halves through clean -> summarize -> embed, then fit
and score KNN, Gaussian naive Bayes and a decision tree on identical
features.
"""

from pathlib import Path

from policygrader.classify import CLASSIFIER_KINDS, evaluate, fit_classifier
from policygrader.config import AppConfig
from policygrader.dataset import SplitSpec, load, split
from policygrader.service import _points_to_features

corpus = Path(__file__).resolve().parent.parent / "data" / "mini_corpus.ndjson"
dataset = load(str(corpus))
print(f"loaded {len(dataset.points)} labeled points from {corpus.name}")

# A deterministic 80/20 split: same seed, same partition, every time.
train_ds, test_ds = split(dataset, SplitSpec(train_fraction=0.8, seed=42))
print(f"train={len(train_ds.points)} test={len(test_ds.points)}")

# Featurize once and share the matrices across all three models.
cfg = AppConfig()
train_x, train_y, _, _ = _points_to_features(train_ds.points, cfg.summarizer, cfg.embedder)
test_x, test_y, _, _ = _points_to_features(test_ds.points, cfg.summarizer, cfg.embedder)

fingerprint = cfg.embedder.fingerprint()
models = [
    (kind, fit_classifier(kind, list(zip(train_x, train_y)), fingerprint=fingerprint))
    for kind in CLASSIFIER_KINDS
]

# Support-weighted precision/recall/F1, accuracy and one-vs-rest AUC.
# Note the recall column always equals the accuracy column: with
# support weights, both reduce to trace/total of the confusion matrix.
rows = evaluate(models, list(zip(test_x, test_y)))
print(f"\n{'model':<14} {'precision':>9} {'recall':>9} {'f1':>9} {'accuracy':>9} {'auc':>9}")
for row in rows:
    print(f"{row.model_name:<14} {row.precision:>9.4f} {row.recall:>9.4f} "
          f"{row.f1:>9.4f} {row.accuracy:>9.4f} {row.auc:>9.4f}")

assert all(abs(row.recall - row.accuracy) <= 1e-12 for row in rows)
