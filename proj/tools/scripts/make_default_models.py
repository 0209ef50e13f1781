#!/usr/bin/env python3
"""Writes the hand-authored default category and significance models.

Both models are keyword stumps over the hashed-bow-v1 embedding plus a few
size and context splits. They exist so the tool runs out of the box; a model
trained by the classifier trainer replaces them via --category-model and
--significance-model.

usage: make_default_models.py OUT_DIR
"""
import json
import math
import sys
from pathlib import Path

DIM = 768
EMBEDDER = "hashed-bow-v1"
TRAINER = "hand-authored-0.1"

LABELS = ["feat", "fix", "docs", "style", "refactor", "perf", "test", "build", "ci", "chore", "revert"]
LANGUAGES = ["C", "C#", "C++", "CMake", "Go", "Java", "JavaScript", "JSON", "Kotlin", "Markdown", "Python",
             "Ruby", "Rust", "Shell", "Swift", "TypeScript", "YAML"]
RELEASE_TYPES = ["Major", "Minor", "Patch", "Unknown"]
SCALARS = ["release_commits", "release_authors", "avg_changeset", "avg_codechurn", "avg_history_complexity",
           "commit_total", "contributor_count", "star_count", "issue_count", "pr_count", "comment_count"]
DOMAINS = ["ApplicationSoftware", "SystemSoftware", "LibrariesAndFrameworks", "SoftwareTools"]

# label -> [(keyword, weight)]; the conventional type word itself comes first
# and carries most of the weight.
CATEGORY_KEYWORDS = {
    "feat": [("feat", 4.0), ("add", 1.2), ("support", 1.0), ("new", 0.8), ("introduce", 1.0), ("implement", 1.0),
             ("translation", 0.8)],
    "fix": [("fix", 4.0), ("bug", 1.5), ("crash", 1.5), ("resolve", 1.0), ("error", 0.8), ("wrong", 0.8)],
    "docs": [("docs", 4.0), ("readme", 2.0), ("documentation", 2.0), ("typo", 1.5), ("doc", 1.5)],
    "style": [("style", 4.0), ("format", 1.5), ("formatting", 1.5), ("whitespace", 1.5), ("lint", 1.0)],
    "refactor": [("refactor", 4.0), ("rename", 1.5), ("cleanup", 1.2), ("simplify", 1.2), ("extract", 1.0)],
    "perf": [("perf", 4.0), ("performance", 2.0), ("faster", 1.5), ("speed", 1.2), ("optimize", 1.5),
             ("optimise", 1.5)],
    "test": [("test", 4.0), ("tests", 2.0), ("coverage", 1.2)],
    "build": [("build", 4.0), ("cmake", 1.5), ("deps", 1.5), ("dependency", 1.2), ("bump", 1.5),
              ("makefile", 1.2)],
    "ci": [("ci", 4.0), ("workflow", 1.5), ("actions", 1.2), ("pipeline", 1.0)],
    "chore": [("chore", 4.0), ("release", 1.0), ("version", 0.8), ("update", 0.4)],
    "revert": [("revert", 4.0), ("reverts", 2.0)],
}

# keyword -> significance margin contribution
SIGNIFICANCE_KEYWORDS = [
    ("feat", 1.4), ("add", 0.6), ("support", 0.5), ("breaking", 2.0), ("fix", 1.1), ("crash", 0.6),
    ("security", 1.2), ("perf", 0.8), ("typo", -1.2), ("chore", -1.2), ("docs", -0.9), ("style", -1.0),
    ("ci", -1.0), ("bump", -0.8), ("format", -0.6), ("test", -0.6), ("whitespace", -1.0), ("merge", -0.8),
]


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def bucket(word: str) -> int:
    return fnv1a64(word.encode()) % DIM


def layout():
    names = [f"emb_{i}" for i in range(DIM)]
    names += ["added_lines", "deleted_lines"]
    names += [f"lang_{l}" for l in LANGUAGES] + ["lang_Other"]
    names += [f"release_type_{t}" for t in RELEASE_TYPES]
    names += SCALARS
    names += [f"domain_{d}" for d in DOMAINS]
    return names


def stump(feature, threshold, left, right):
    return {"nodes": [{"feature": feature, "threshold": threshold, "left": 1, "right": 2},
                      {"value": left}, {"value": right}]}


def presence(feature, value_if_present, zero):
    # Normalised embedding components are strictly positive when the word occurs.
    return stump(feature, 1e-6, zero, value_if_present)


def category_model():
    k = len(LABELS)
    zero = [0.0] * k
    owner = {}
    trees = []
    for label, words in CATEGORY_KEYWORDS.items():
        for rank, (word, weight) in enumerate(words):
            b = bucket(word)
            if b in owner:
                other_label, other_word, other_rank = owner[b]
                if rank == 0 and other_rank != 0:
                    sys.exit(f"bucket {b}: type word '{word}' collides with '{other_word}'")
                print(f"skipping '{word}' ({label}): bucket {b} already used by '{other_word}' ({other_label})",
                      file=sys.stderr)
                continue
            owner[b] = (label, word, rank)
            leaf = list(zero)
            leaf[LABELS.index(label)] = weight
            trees.append(presence(b, leaf, zero))
    base = [0.0] * k
    base[LABELS.index("chore")] = 0.3
    return {"format": "smartnote-tree-model", "version": 1, "task": "category", "feature_layout": layout(),
            "class_labels": LABELS, "base_margin": base,
            "metadata": {"trainer_version": TRAINER, "embedder_id": EMBEDDER, "embedding_dim": DIM,
                         "count_transform": "log1p"}, "trees": trees}


def significance_model():
    names = layout()
    idx = {n: i for i, n in enumerate(names)}
    trees = []
    seen = {}
    for word, weight in SIGNIFICANCE_KEYWORDS:
        b = bucket(word)
        if b in seen:
            print(f"skipping '{word}': bucket {b} already used by '{seen[b]}'", file=sys.stderr)
            continue
        seen[b] = word
        trees.append(presence(b, [weight], [0.0]))
    # Line counts: non-decreasing in both.
    added = idx["added_lines"]
    trees.append({"nodes": [
        {"feature": added, "threshold": math.log1p(3), "left": 1, "right": 2},
        {"value": [-1.2]},
        {"feature": added, "threshold": math.log1p(25), "left": 3, "right": 4},
        {"value": [0.0]},
        {"value": [0.7]}]})
    trees.append(stump(idx["deleted_lines"], math.log1p(40), [0.0], [0.3]))
    # Small releases make each commit more likely to be mentioned.
    trees.append(stump(idx["release_commits"], math.log1p(12), [0.4], [-0.2]))
    trees.append(stump(idx["lang_Markdown"], 0.5, [0.0], [-0.4]))
    return {"format": "smartnote-tree-model", "version": 1, "task": "significance", "feature_layout": names,
            "base_margin": [-1.2],
            "metadata": {"trainer_version": TRAINER, "embedder_id": EMBEDDER, "embedding_dim": DIM,
                         "count_transform": "log1p"}, "trees": trees}


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for name, model in (("category.json", category_model()), ("significance.json", significance_model())):
        (out / name).write_text(json.dumps(model, indent=1) + "\n")
        print(f"wrote {out / name}: {len(model['trees'])} trees")


if __name__ == "__main__":
    main()
