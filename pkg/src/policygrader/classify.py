"""Chunk classification over {good, neutral, bad, blocker}.

The production classifier is k-nearest-neighbors (k=3 by default) over
embedding vectors; Gaussian naive Bayes and a CART decision tree are
provided through the same interface so alternatives can be compared on
the same split.  ``compute_metrics`` produces the evaluation row
(precision / recall / F1 / accuracy / AUC, all support-weighted) used by
the ``evaluate`` harness.

All models are immutable after fitting and safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class PointLabel(enum.Enum):
    GOOD = "good"
    NEUTRAL = "neutral"
    BAD = "bad"
    BLOCKER = "blocker"

    @classmethod
    def parse(cls, value: str) -> "PointLabel":
        for label in cls:
            if label.value == value:
                return label
        raise ValueError(f"unknown point label: {value!r}")


#: Canonical class order; fixes score-map ordering and argmax tie-breaks.
LABELS: tuple[PointLabel, ...] = (
    PointLabel.GOOD,
    PointLabel.NEUTRAL,
    PointLabel.BAD,
    PointLabel.BLOCKER,
)

_LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}

_VARIANCE_FLOOR = 1e-9
_MAX_TREE_THRESHOLDS = 32


@dataclass(frozen=True)
class Prediction:
    """Predicted label plus per-class scores summing to 1."""

    label: PointLabel
    scores: dict[PointLabel, float]


@dataclass(frozen=True)
class MetricsRow:
    model_name: str
    precision: float
    recall: float
    f1: float
    accuracy: float
    auc: float


def _as_matrix(vectors) -> np.ndarray:
    """Stack vectors (ndarrays or EmbeddingVector) into an (n, D) matrix."""
    rows = [np.asarray(getattr(v, "values", v), dtype=np.float64) for v in vectors]
    dims = {r.shape for r in rows}
    if len(dims) > 1:
        raise ValueError(f"mixed vector dimensions: {sorted(dims)}")
    return np.vstack(rows)


def _as_vector(query) -> np.ndarray:
    return np.asarray(getattr(query, "values", query), dtype=np.float64)


def _scores_dict(values: np.ndarray) -> dict[PointLabel, float]:
    return {label: float(values[i]) for i, label in enumerate(LABELS)}


# ---------------------------------------------------------------------------
# KNN


@dataclass(frozen=True)
class KnnModel:
    """Lazy learner: all training points stored verbatim."""

    k: int
    vectors: np.ndarray = field(repr=False)
    labels: tuple[PointLabel, ...]
    embedder_fingerprint: str
    kind: str = "knn"

    def predict(self, query) -> Prediction:
        return knn_predict(self, query)


def knn_fit(train, k: int = 3, fingerprint: str = "unspecified") -> KnnModel:
    """Store the training set for nearest-neighbor prediction.

    ``train`` is a sequence of (vector, PointLabel) pairs.  Requires
    1 <= k <= len(train), uniform dimensions, and a non-empty fingerprint
    identifying the embedding space the vectors came from.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(train) < k:
        raise ValueError(f"need at least k={k} training points, got {len(train)}")
    if not fingerprint:
        raise ValueError("embedder fingerprint must be non-empty")
    vectors = _as_matrix([v for v, _ in train])
    labels = tuple(label for _, label in train)
    return KnnModel(k=k, vectors=vectors, labels=labels, embedder_fingerprint=fingerprint)


def knn_predict(model: KnnModel, query) -> Prediction:
    """Vote over the k nearest stored points (Euclidean distance).

    Distance ties resolve to the lower stored index; a vote tie resolves
    to the label of the nearest neighbor carrying one of the tied labels.
    """
    q = _as_vector(query)
    if q.shape != (model.vectors.shape[1],):
        raise ValueError(
            f"query dimension {q.shape} does not match model ({model.vectors.shape[1]},)"
        )
    diffs = model.vectors - q
    d2 = np.einsum("ij,ij->i", diffs, diffs)
    # lexsort: primary key d2, secondary key stored index.
    order = np.lexsort((np.arange(len(d2)), d2))
    nearest = order[: model.k]

    votes = np.zeros(len(LABELS))
    for idx in nearest:
        votes[_LABEL_INDEX[model.labels[idx]]] += 1
    scores = votes / model.k

    best = votes.max()
    tied = {label for i, label in enumerate(LABELS) if votes[i] == best}
    if len(tied) == 1:
        label = next(iter(tied))
    else:
        label = next(model.labels[idx] for idx in nearest if model.labels[idx] in tied)
    return Prediction(label=label, scores=_scores_dict(scores))


# ---------------------------------------------------------------------------
# Gaussian naive Bayes


@dataclass(frozen=True)
class GaussianNbModel:
    log_priors: np.ndarray = field(repr=False)
    means: np.ndarray = field(repr=False)      # (classes, D)
    variances: np.ndarray = field(repr=False)  # (classes, D), floored
    embedder_fingerprint: str = "unspecified"
    kind: str = "gaussian_nb"

    def predict(self, query) -> Prediction:
        x = _as_vector(query)
        if x.shape != (self.means.shape[1],):
            raise ValueError("query dimension does not match model")
        log_lik = -0.5 * np.sum(
            np.log(2.0 * np.pi * self.variances)
            + (x - self.means) ** 2 / self.variances,
            axis=1,
        )
        joint = self.log_priors + log_lik
        # Softmax in log space for numerically sane posteriors.
        joint -= joint.max()
        posterior = np.exp(joint)
        posterior /= posterior.sum()
        label = LABELS[int(np.argmax(posterior))]
        return Prediction(label=label, scores=_scores_dict(posterior))


def _fit_gaussian_nb(train, fingerprint: str) -> GaussianNbModel:
    matrix = _as_matrix([v for v, _ in train])
    codes = np.array([_LABEL_INDEX[label] for _, label in train])
    for i, label in enumerate(LABELS):
        if not np.any(codes == i):
            raise ValueError(f"gaussian_nb requires every class in training data; "
                             f"missing {label.value!r}")
    n_classes = len(LABELS)
    means = np.zeros((n_classes, matrix.shape[1]))
    variances = np.zeros_like(means)
    priors = np.zeros(n_classes)
    for i in range(n_classes):
        rows = matrix[codes == i]
        priors[i] = len(rows) / len(matrix)
        means[i] = rows.mean(axis=0)
        variances[i] = np.maximum(rows.var(axis=0), _VARIANCE_FLOOR)
    return GaussianNbModel(
        log_priors=np.log(priors),
        means=means,
        variances=variances,
        embedder_fingerprint=fingerprint,
    )


# ---------------------------------------------------------------------------
# Decision tree (CART, Gini impurity)


@dataclass(frozen=True)
class DecisionTreeModel:
    """CART tree; nodes stored as JSON-ready nested dicts."""

    root: dict
    max_depth: int
    embedder_fingerprint: str = "unspecified"
    kind: str = "decision_tree"

    def predict(self, query) -> Prediction:
        x = _as_vector(query)
        node = self.root
        while not node["leaf"]:
            node = node["left"] if x[node["dim"]] <= node["threshold"] else node["right"]
        scores = np.asarray(node["scores"])
        return Prediction(label=PointLabel.parse(node["label"]), scores=_scores_dict(scores))


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.sum(p * p))


def _leaf(counts: np.ndarray) -> dict:
    scores = counts / counts.sum()
    label = LABELS[int(np.argmax(counts))]  # count ties -> canonical order
    return {"leaf": True, "label": label.value, "scores": [float(s) for s in scores]}


def _best_split(matrix: np.ndarray, codes: np.ndarray):
    """Best (dim, threshold) by Gini gain; ties to lower dim, then threshold.

    Candidate thresholds are midpoints between consecutive distinct
    values; dimensions with many distinct values are thinned to at most
    ``_MAX_TREE_THRESHOLDS`` evenly spaced candidates.
    """
    n, n_dims = matrix.shape
    parent_counts = np.bincount(codes, minlength=len(LABELS))
    parent_gini = _gini(parent_counts)
    best = None  # (gain, dim, threshold, left_mask)
    for dim in range(n_dims):
        col = matrix[:, dim]
        order = np.argsort(col, kind="stable")
        sorted_col = col[order]
        sorted_codes = codes[order]
        boundaries = np.nonzero(np.diff(sorted_col))[0]
        if len(boundaries) == 0:
            continue
        if len(boundaries) > _MAX_TREE_THRESHOLDS:
            pick = np.linspace(0, len(boundaries) - 1, _MAX_TREE_THRESHOLDS).round()
            boundaries = boundaries[np.unique(pick.astype(int))]
        onehot = np.zeros((n, len(LABELS)))
        onehot[np.arange(n), sorted_codes] = 1.0
        prefix = np.cumsum(onehot, axis=0)
        for b in boundaries:
            left_counts = prefix[b]
            right_counts = parent_counts - left_counts
            n_left = b + 1
            n_right = n - n_left
            weighted = (n_left * _gini(left_counts) + n_right * _gini(right_counts)) / n
            gain = parent_gini - weighted
            threshold = (sorted_col[b] + sorted_col[b + 1]) / 2.0
            if gain > 1e-12 and (best is None or gain > best[0] + 1e-15):
                best = (gain, dim, threshold)
    if best is None:
        return None
    _, dim, threshold = best
    return dim, threshold


def _grow_tree(matrix: np.ndarray, codes: np.ndarray, depth: int, max_depth: int) -> dict:
    counts = np.bincount(codes, minlength=len(LABELS))
    if depth >= max_depth or len(codes) < 2 or _gini(counts) == 0.0:
        return _leaf(counts)
    split = _best_split(matrix, codes)
    if split is None:
        return _leaf(counts)
    dim, threshold = split
    left_mask = matrix[:, dim] <= threshold
    return {
        "leaf": False,
        "dim": int(dim),
        "threshold": float(threshold),
        "left": _grow_tree(matrix[left_mask], codes[left_mask], depth + 1, max_depth),
        "right": _grow_tree(matrix[~left_mask], codes[~left_mask], depth + 1, max_depth),
    }


def _fit_decision_tree(train, max_depth: int, fingerprint: str) -> DecisionTreeModel:
    matrix = _as_matrix([v for v, _ in train])
    codes = np.array([_LABEL_INDEX[label] for _, label in train])
    root = _grow_tree(matrix, codes, depth=0, max_depth=max_depth)
    return DecisionTreeModel(root=root, max_depth=max_depth,
                             embedder_fingerprint=fingerprint)


# ---------------------------------------------------------------------------
# Unified fitting interface

CLASSIFIER_KINDS = ("knn", "gaussian_nb", "decision_tree")


def fit_classifier(kind: str, train, *, k: int = 3, max_depth: int = 12,
                   fingerprint: str = "unspecified"):
    """Fit one of the registered classifier kinds on (vector, label) pairs."""
    if not train:
        raise ValueError("training data must be non-empty")
    if kind == "knn":
        return knn_fit(train, k=k, fingerprint=fingerprint)
    if kind == "gaussian_nb":
        return _fit_gaussian_nb(train, fingerprint)
    if kind == "decision_tree":
        return _fit_decision_tree(train, max_depth, fingerprint)
    raise ValueError(f"unknown classifier kind: {kind!r} (expected one of {CLASSIFIER_KINDS})")


# ---------------------------------------------------------------------------
# Evaluation metrics


def _binary_auc(positives: np.ndarray, scores: np.ndarray) -> float:
    """Area under the ROC curve via descending-threshold sweep.

    Tied scores are collapsed into single sweep points, so the result
    equals the pairwise-comparison definition with half credit for ties.
    """
    order = np.argsort(-scores, kind="stable")
    pos_sorted = positives[order]
    scores_sorted = scores[order]
    true_pos = np.cumsum(pos_sorted)
    false_pos = np.cumsum(~pos_sorted)
    last_of_group = np.r_[np.nonzero(np.diff(scores_sorted))[0], len(scores_sorted) - 1]
    tpr = np.r_[0.0, true_pos[last_of_group] / true_pos[-1]]
    fpr = np.r_[0.0, false_pos[last_of_group] / false_pos[-1]]
    return float(np.trapezoid(tpr, fpr))


def compute_metrics(y_true: list[PointLabel], y_pred: list[PointLabel],
                    y_scores: list[dict[PointLabel, float]],
                    model_name: str = "") -> MetricsRow:
    """Support-weighted multiclass metrics from the 4x4 confusion matrix.

    Weighted recall is identically the accuracy (both reduce to
    trace/total); classes absent from ``y_true`` carry zero weight, and a
    class never predicted contributes precision 0.  AUC is the
    support-weighted one-vs-rest area, skipping classes with no positives
    or no negatives.
    """
    if not (len(y_true) == len(y_pred) == len(y_scores)):
        raise ValueError("y_true, y_pred and y_scores must have equal lengths")
    if not y_true:
        raise ValueError("cannot compute metrics on zero predictions")

    n = len(y_true)
    n_classes = len(LABELS)
    true_codes = np.array([_LABEL_INDEX[t] for t in y_true])
    pred_codes = np.array([_LABEL_INDEX[p] for p in y_pred])
    confusion = np.bincount(
        true_codes * n_classes + pred_codes, minlength=n_classes * n_classes
    ).reshape(n_classes, n_classes)

    support = confusion.sum(axis=1)
    predicted = confusion.sum(axis=0)
    diag = np.diag(confusion)

    precision = np.where(predicted > 0, diag / np.maximum(predicted, 1), 0.0)
    recall = np.where(support > 0, diag / np.maximum(support, 1), 0.0)
    denom = precision + recall
    f1 = np.where(denom > 0, 2 * precision * recall / np.where(denom > 0, denom, 1), 0.0)

    weights = support / n
    weighted_precision = float(np.sum(weights * precision))
    weighted_recall = float(np.sum(weights * recall))
    weighted_f1 = float(np.sum(weights * f1))
    accuracy = float(diag.sum() / n)

    auc_total = 0.0
    auc_weight = 0
    for i, label in enumerate(LABELS):
        if support[i] == 0 or support[i] == n:
            continue  # AUC undefined without both positives and negatives
        positives = true_codes == i
        class_scores = np.array([s.get(label, 0.0) for s in y_scores])
        auc_total += support[i] * _binary_auc(positives, class_scores)
        auc_weight += support[i]
    auc = auc_total / auc_weight if auc_weight else 0.0

    return MetricsRow(
        model_name=model_name,
        precision=weighted_precision,
        recall=weighted_recall,
        f1=weighted_f1,
        accuracy=accuracy,
        auc=float(auc),
    )


def evaluate(models, test) -> list[MetricsRow]:
    """One metrics row per (name, model) pair on a shared test set."""
    if not test:
        raise ValueError("test set must be non-empty")
    rows = []
    for name, model in models:
        try:
            predictions = [model.predict(vector) for vector, _ in test]
        except Exception as exc:
            raise RuntimeError(f"model {name!r} failed to predict: {exc}") from exc
        rows.append(
            compute_metrics(
                [label for _, label in test],
                [p.label for p in predictions],
                [p.scores for p in predictions],
                model_name=name,
            )
        )
    return rows
