"""Rank a handful of candidates by closeness to the ideal solution.

Walks the ranking pipeline one stage at a time on a small hand-written
decision matrix: vector normalization, weighting, ideal best/worst points,
separation distances, and the final closeness ranking, then checks the
result against expert reference scores with the agreement metrics.
"""
import numpy as np

from talentrank import topsis, validation

candidate_ids = ("ada", "brin", "cruz", "dev", "eko")
criterion_names = ("experience_years", "education", "skills", "about")

# rows are candidates, columns are criteria; all criteria are merits here
matrix = topsis.DecisionMatrix(
    entries=np.array([
        [9.0, 4.0, 7.0, 3.0],
        [4.0, 5.0, 5.0, 4.0],
        [7.0, 2.0, 8.0, 2.0],
        [2.0, 3.0, 3.0, 3.0],
        [6.0, 4.0, 6.0, 4.0],
    ]),
    criterion_names=criterion_names,
    candidate_ids=candidate_ids,
)
weights = [0.4, 0.2, 0.3, 0.1]
directions = ["benefit"] * 4

print("decision matrix:")
print(matrix.entries)

normalized = topsis.normalize_matrix(matrix)
print("\nnormalized (unit-norm columns):")
print(np.round(normalized, 4))

weighted = topsis.apply_weights(normalized, weights)
ideals = topsis.ideal_points(weighted, directions)
print("\nideal best: ", np.round(ideals.best, 4))
print("ideal worst:", np.round(ideals.worst, 4))

s_plus, s_minus = topsis.separation_distances(weighted, ideals)
result = topsis.closeness_and_rank(s_plus, s_minus, candidate_ids)

print("\nranking (closeness coefficient, higher is better):")
for rank, idx in enumerate(result.ranking, start=1):
    print(f"  {rank}. {candidate_ids[idx]:<5} closeness={result.closeness[idx]:.4f} "
          f"(s+={s_plus[idx]:.4f}, s-={s_minus[idx]:.4f})")

# compare the computed scores against expert ratings of the same candidates
expert_scores = np.array([5.0, 3.0, 4.0, 1.0, 4.0])
pair = validation.ScorePair(predicted=result.closeness * 5.0, reference=expert_scores)
report = validation.validation_report(pair)

print("\nagreement with expert scores (predicted = closeness * 5):")
for name, value in report.values.items():
    print(f"  {name:10s} {value: .4f}")
for name, reason in report.unavailable.items():
    print(f"  {name:10s} unavailable: {reason}")
