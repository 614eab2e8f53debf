"""Encodes random strings with lextok-trained files through both the lextok CLI
and the `tokenizers` package and compares ids. Exits 77 (skip) when the
package is not installed.

    hf_parity.py LEXTOK_BIN CORPUS_DIR WORK_DIR
"""
import os
import random
import subprocess
import sys

try:
    from tokenizers import Tokenizer
except ImportError:
    print("tokenizers package not installed; skipping")
    sys.exit(77)

PRESETS = ["char-4k", "domain-64k", "domain-128k-cased", "domain-128k-uncased"]
SAMPLES = 600

PIECES = [
    "the", "The", " court", "U.S.C.", " § ", "362(a)", "(iv)", "(IV)", "1998", " 1776", "12(b)(6)",
    "Fed.", " R.", " Civ.", "EBITDA", "<div>", "</p>", "##", "{\"", "\t", "\n", "\r\n", "  ", "   \n ",
    "é", "ß", "ﬁ", "Σ", "ς", "σ", "İ", "½", "①", "中文", "😀", " ", " ", "é", "'s", "n't",
    "1,000", "14.3%", "$4,812.6", "“", "”", "‘", "’", "–", "...", "x", "A", "0",
]


def random_text(rng):
    return "".join(rng.choice(PIECES) for _ in range(rng.randint(0, 12)))


def lextok(binary, *args):
    run = subprocess.run([binary, *args], capture_output=True, text=True, encoding="utf-8")
    if run.returncode != 0:
        sys.exit(f"lextok {' '.join(args[:2])} failed: {run.stderr}")
    return run.stdout


def main():
    binary, corpus, work = sys.argv[1:4]
    os.makedirs(work, exist_ok=True)
    rng = random.Random(20240101)
    texts = [random_text(rng) for _ in range(SAMPLES)]
    failures = 0
    for preset in PRESETS:
        path = os.path.join(work, preset + ".json")
        lextok(binary, "train", "--preset", preset, "--corpus", corpus, "--out", path)
        hf = Tokenizer.from_file(path)
        mismatches = 0
        for start in range(0, len(texts), 100):
            batch = texts[start:start + 100]
            lines = lextok(binary, "encode", "--model", path, "--", *batch).split("\n")
            for text, line in zip(batch, lines):
                ours = [int(x) for x in line.split()]
                theirs = hf.encode(text, add_special_tokens=False).ids
                if ours != theirs:
                    mismatches += 1
                    if mismatches <= 3:
                        print(f"  {preset} {text!r}: lextok {ours} tokenizers {theirs}")
        print(f"{preset}: {mismatches} mismatches of {len(texts)}")
        failures += mismatches
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
