"""Freezes reference splits of a fixed input list as tests/fixtures/pretok_golden.json.

Uses the `tokenizers` package (ByteLevel with its built-in regex, and Split
with the isolated-runs pattern) as the reference implementation.
"""
import json

from tokenizers import Regex, pre_tokenizers

INPUTS = [
    "56(a)",
    "The court",
    "",
    "11 U.S.C. § 362(a)",
    "Fed. R. Civ. P. 12(b)(6)",
    "EBITDA increased by 14.3%",
    "  two  spaces   three",
    "line\n\nbreak \n tail ",
    "tab\tsep\t\tend\t",
    "it's they're we've I'm you'll he'd",
    "don't DON'T",
    "naïve café résumé",
    "Ελληνικά κείμενα",
    "中文文本，标点。",
    "x y z w",
    "¼ ½ ² ³ ①",
    "a1b2 c3d4",
    "$1,000.00 (USD)",
    "“quoted” – ‘single’",
    "emoji 😀 here",
    "é combining",
    "###  Heading\n- item",
    "<div class=\"x\">text</div>",
    "{\"key\": [1, 2]}",
    "   ",
    "\n",
    " leading",
    "trailing ",
    "!!!?? ...",
    "A.B.C. 1.2.3",
]

ISOLATED = r"\p{L}+|\p{N}+|[^\s\p{L}\p{N}]+|\s+"


def raw_pieces(pre, text):
    out = []
    for _, (start, end) in pre.pre_tokenize_str(text):
        out.append(text[start:end])
    return out


def main():
    adhering = pre_tokenizers.ByteLevel(add_prefix_space=False, use_regex=True)
    isolated = pre_tokenizers.Split(Regex(ISOLATED), behavior="isolated")
    cases = []
    for text in INPUTS:
        cases.append({
            "text": text,
            "space_adhering": raw_pieces(adhering, text),
            "isolated_runs": raw_pieces(isolated, text),
        })
    with open("tests/fixtures/pretok_golden.json", "w", encoding="utf-8") as f:
        json.dump(cases, f, ensure_ascii=False, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
