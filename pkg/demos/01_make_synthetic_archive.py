"""Generate a small synthetic MIT-BIH-style archive and look at the files.

The generator writes genuine WFDB artifacts: ASCII .hea headers, format-212
packed .dat signals, and MIT-format .atr annotations, with known ground
truth (beat positions, labels, injected RR outliers).  Everything the other
demos do works offline on top of this; point them at a real archive with
--data-dir to run on the actual recordings.

Run:  python demos/01_make_synthetic_archive.py
"""

from pathlib import Path

from ecgforge import SyntheticConfig, generate_archive

OUT = Path("demo_output/archive")


def main():
    truths = generate_archive(OUT, SyntheticConfig(n_records=4, duration_s=150, seed=7))
    print(f"wrote {len(truths)} records to {OUT}/")
    for name, truth in sorted(truths.items()):
        files = ", ".join(
            f"{name}{ext} ({(OUT / (name + ext)).stat().st_size} B)"
            for ext in (".hea", ".dat", ".atr")
        )
        print(f"  {files}")
        print(
            f"    {truth.n_beats} beats, injected RR outliers: "
            f"{truth.upper_injected} upper / {truth.lower_injected} lower"
        )
    print()
    print(f"header of record 800:\n{(OUT / '800.hea').read_text()}")


if __name__ == "__main__":
    main()
