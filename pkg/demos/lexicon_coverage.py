"""Offset-exact lexicon matching in both segmentation modes, plus coverage.

Run with: python demos/lexicon_coverage.py
"""

from stylelex import Category, Lexicon, coverage, match

EN = Lexicon("en", (
    Category("Gratitude", ("thanks", "thank you")),
    Category("Greeting", ("hello", "hi")),
    Category("Apologizing", ("sorry",)),
))

ZH = Lexicon("zh", (
    Category("Gratitude", ("谢谢",)),
    Category("Greeting", ("你好",)),
    Category("Honorifics", ("您",)),
))

EN_CORPUS = [
    "Hello there, thank you so much!",
    "hi, sorry about the delay",
    "the ship leaves tomorrow",        # no terms: "hi" inside "ship" is not a word
    "thanks thanks thanks",
    "nothing to report",
]

ZH_CORPUS = ["你好，谢谢您", "请坐", "谢谢大家"]


def show(lex, texts, segmentation):
    print(f"--- {lex.language} ({segmentation} segmentation) ---")
    for text in texts:
        hits = match(lex, text, segmentation)
        print(f"  {text!r}")
        for m in hits:
            print(f"    [{m.char_start:2d},{m.char_end:2d}) {m.category:12s} {m.term!r}")
        if not hits:
            print("    (no matches)")
    stat = coverage(lex, texts, segmentation)
    print(f"  coverage: {stat.covered}/{stat.total} = {stat.percent:.1f}%")
    print()


def main():
    # English terms match whole token sequences, case-insensitively; the
    # phrase "thank you" wins over any shorter term starting at the same
    # place, and within one category matches never overlap.
    show(EN, EN_CORPUS, "whitespace")

    # Chinese has no useful whitespace: terms match any exact character
    # substring, and offsets index characters of the NFC-normalized text.
    show(ZH, ZH_CORPUS, "substring")

    print("matches from different categories may share text, which is why")
    print("category importances are summed independently downstream")


if __name__ == "__main__":
    main()
