"""
Hashed n-gram embeddings
========================

Each summary becomes a fixed-length unit vector: word unigrams and
bigrams are hashed into 768 signed buckets and the result is
L2-normalized.  No vocabulary is stored, so the embedder needs no
training and two runs can never disagree.
"""

import numpy as np

from policygrader.embed import EmbedderConfig, embed, embed_batch

cfg = EmbedderConfig()
print(f"fingerprint: {cfg.fingerprint()}")

texts = [
    "we sell your browsing history to advertisers",
    "we sell browsing data and history to advertising partners",
    "you can delete your account at any time",
]
vectors = embed_batch(texts, cfg)

# The contract: fixed dimension, unit norm, fully deterministic.
for text, vector in zip(texts, vectors):
    norm = float(np.linalg.norm(vector.values))
    print(f"dim={vector.values.shape[0]} norm={norm:.9f}  {text}")
assert all(v.values.shape == (768,) for v in vectors)

# Cosine similarity is just the dot product of unit vectors.  The two
# "sell your data" sentences share far more n-grams with each other
# than either shares with the deletion right.
def cos(a, b):
    return float(a.values @ b.values)

print(f"\nsell vs sell-reworded: {cos(vectors[0], vectors[1]):.4f}")
print(f"sell vs delete:        {cos(vectors[0], vectors[2]):.4f}")
assert cos(vectors[0], vectors[1]) > cos(vectors[0], vectors[2])

# Determinism: embedding the same text again gives bit-identical bytes.
again = embed(texts[0], cfg)
assert again.values.tobytes() == vectors[0].values.tobytes()
print("\nre-embedding is bit-identical")
