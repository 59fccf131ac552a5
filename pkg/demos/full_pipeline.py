"""Drive the whole batch pipeline through the command-line interface.

Generates synthetic inputs, then runs every subcommand in order into one
output directory: ingest -> preprocess -> rank -> train-baseline ->
evaluate -> compare -> report. Re-running with the same seed reproduces
every artifact byte for byte.
"""
import tempfile
from pathlib import Path

from talentrank.cli import main
from talentrank.synthetic import write_demo_inputs

workdir = Path(tempfile.mkdtemp(prefix="talentrank-demo-"))
inputs = write_demo_inputs(workdir / "inputs", n_profiles=100, seed=7)
out = workdir / "out"
print(f"working in {workdir}\n")

steps = [
    ["ingest", "--profiles", str(inputs["profiles"])],
    ["preprocess", "--profiles", str(inputs["profiles"]), "--lexicon", str(inputs["lexicon"])],
    ["rank", "--profiles", str(inputs["profiles"]), "--encoding", str(inputs["encoding"])],
    ["train-baseline", "--train", str(out / "train.csv"), "--test", str(out / "test.csv")],
    ["evaluate", "--scores", str(out / "baseline_scores.csv")],
    ["compare", str(out / "baseline_scores.csv")],
    ["report"],
]

for step in steps:
    print(f"$ talentrank --out {out.name} --seed 42 {' '.join(step)}")
    rc = main(["--out", str(out), "--seed", "42"] + step)
    if rc != 0:
        raise SystemExit(rc)
    print()

print("artifacts written:")
for path in sorted(out.iterdir()):
    print(f"  {path.relative_to(workdir)}")
