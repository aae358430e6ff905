"""
Standalone script to try alignment_metrics without installation.
This script adds the current directory to the Python path so the
alignment_metrics package can be imported directly.
"""

import sys
import os
import io

# Fix Windows console encoding for tab-separated output
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from alignment_metrics import (
    Metric, MetricConfig, load_text_format, tokenize, score, score_batch,
    build_matrices, score_matrix, word_alignment, best_matches, kendall_tau_b,
)

# A toy 3-dimensional embedding table in word2vec text format
VECTORS = b"""7 3
the 0.10 0.90 0.00
a 0.15 0.85 0.05
cat 0.90 0.10 0.20
kitten 0.80 0.20 0.30
dog 0.70 0.05 0.60
sat 0.00 0.30 0.90
sleeps 0.05 0.40 0.85
"""

table = load_text_format(io.BytesIO(VECTORS))

print("=" * 60)
print("alignment_metrics - sentence similarity over word vectors")
print("=" * 60)

print("\n1. Scoring one sentence pair:")
print("-" * 60)
hyp = tokenize("The kitten sat.")
ref = tokenize("the cat sat .")
print(f"hypothesis = {list(hyp)}")
print(f"reference  = {list(ref)}")
for metric in Metric:
    config = MetricConfig(metric=metric, threshold=0.2, lowercase_fallback=True)
    print(f"  {metric.label} = {score(hyp, ref, table, config):.6f}")

print("\n2. Word alignments:")
print("-" * 60)
config = MetricConfig(threshold=0.2, lowercase_fallback=True)
print("HAS (1:1):")
for link in word_alignment(hyp, ref, table, config):
    print(f"  {hyp[link.hyp_index]:8s} -> {ref[link.ref_index]:8s} {link.similarity:.4f}")
print("MAS (best match per hypothesis word):")
for link in best_matches(hyp, ref, table, config):
    print(f"  {hyp[link.hyp_index]:8s} -> {ref[link.ref_index]:8s} {link.similarity:.4f}")

print("\n3. Correlation with human judgments:")
print("-" * 60)
judged = [
    ("the cat sat", "the cat sat", 5),
    ("a kitten sat", "the cat sat", 4),
    ("the dog sat", "the cat sat", 3),
    ("the dog sleeps", "the cat sat", 2),
    ("dog", "the cat sat", 1),
]
pairs = [(tokenize(h), tokenize(r)) for h, r, _ in judged]
human = [h for _, _, h in judged]
for metric in Metric:
    scores = score_batch(pairs, table, MetricConfig(metric=metric))
    print(f"  {metric.label} tau = {kendall_tau_b(list(zip(human, scores))):.4f}")

print("\n4. Threshold sweep (matrices built once):")
print("-" * 60)
matrices = build_matrices(pairs, table, MetricConfig())
for theta in (0.0, 0.2, 0.4, 0.6):
    scores = [score_matrix(matrix, Metric.MAS, theta) for matrix in matrices]
    print(f"  MAS@{theta:.2f}: {' '.join(f'{s:.3f}' for s in scores)}")

print("\n" + "=" * 60)
print("Examples completed!")
print("=" * 60)
