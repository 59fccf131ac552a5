"""Prepare a labeled text corpus: map scores, augment with synonyms, balance.

Shows the preprocessing steps on the bundled synthetic generator: expert
scores become binary labels, each row gains a synonym-augmented twin, and
the minority class is resampled up to the majority count. Everything is
driven by explicit seeds, so re-running prints the same corpus.
"""
from talentrank import preprocess
from talentrank.preprocess import AugmentationConfig
from talentrank.synthetic import demo_lexicon, synthetic_dataset

dataset = synthetic_dataset(n_profiles=12, seed=21)
rows = preprocess.label_dataset(dataset)

print("score -> label mapping (0..2 negative, 3..5 positive):")
for row in rows[:6]:
    print(f"  {row.profile.id}: overall={row.profile.overall_score} -> label={row.label}")

print("\ninitial class counts:", preprocess.class_counts(rows))

lexicon = demo_lexicon()
config = AugmentationConfig(replacement_fraction=0.5, rng_seed=3)
augmented = preprocess.augment_dataset(rows, lexicon, config)
print(f"\nafter augmentation: {len(rows)} rows -> {len(augmented)} rows")
original = rows[0].profile
variant = augmented[len(rows)].profile
print(f"  original  about: {original.about!r}")
print(f"  augmented about: {variant.about!r}")

balanced = preprocess.balance_classes(augmented, rng_seed=5)
print("\nafter balancing:", preprocess.class_counts(balanced))

train, test = preprocess.train_test_split(balanced, train_fraction=0.8, rng_seed=11)
print(f"\n80/20 split: {len(train)} train rows, {len(test)} test rows")

weights = preprocess.compute_class_weights([r.label for r in train])
print(f"class weights from the training labels: 0={weights.negative:.4f} 1={weights.positive:.4f}")
