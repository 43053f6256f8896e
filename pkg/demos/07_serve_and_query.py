"""
The HTTP analysis service
=========================

The same analyze pipeline sits behind a small JSON API: GET /v1/health
reports the loaded model and backends, POST /v1/analyze grades scraped
documents.  Here we mount the app in-process with a test client; in
production you would run `policygrader serve --model mini.model.json`.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from policygrader.config import AppConfig
from policygrader.dataset import SplitSpec
from policygrader.embed import EmbedderConfig
from policygrader.model_io import load_model
from policygrader.service import create_app, train_pipeline
from policygrader.summarize import SummarizerConfig

corpus = Path(__file__).resolve().parent.parent / "data" / "mini_corpus.ndjson"

with tempfile.TemporaryDirectory() as tmp:
    model_path = f"{tmp}/mini.model.json"
    train_pipeline(str(corpus), SplitSpec(seed=42), SummarizerConfig(),
                   EmbedderConfig(), "knn", model_path)
    artifact = load_model(model_path)

client = TestClient(create_app(artifact, AppConfig()))

# Health first: model fingerprint plus the configured backends.
health = client.get("/v1/health").json()
print("GET /v1/health")
print(json.dumps(health, indent=2))

# Now grade a three-paragraph privacy policy.
payload = {
    "url": "https://example.org",
    "documents": [{
        "source": "https://example.org/privacy",
        "kind": "privacy_policy",
        "paragraphs": [
            "We sell your browsing history to advertisers and data brokers.",
            "You can delete your account and export your data at any time.",
            "By using the service you accept binding arbitration and waive "
            "your right to sue.",
        ],
    }],
}
response = client.post("/v1/analyze", json=payload)
print(f"\nPOST /v1/analyze -> {response.status_code}")
body = response.json()
print(f"grade={body['grade']} score={body['score']} counts={body['counts']}")
for item in body["items"]:
    print(f"  [{item['document_index']}:{item['paragraph_index']}] {item['label']}")

# Identical requests produce byte-identical responses - the service is
# as deterministic as the pipeline underneath it.
assert client.post("/v1/analyze", json=payload).content == response.content
print("\nrepeat request is byte-identical")

# Error paths are JSON too: unanalyzable text is 422, bad JSON is 400.
empty = client.post("/v1/analyze", json={"documents": [{"paragraphs": ["<script>x</script>"]}]})
malformed = client.post("/v1/analyze", content=b"{oops",
                        headers={"content-type": "application/json"})
print(f"unanalyzable -> {empty.status_code}, malformed -> {malformed.status_code}")
