"""Regenerate tests/data/porter_voc.txt and porter_output.txt.

Dev-only: needs ``nltk`` and ``snowballstemmer``. A word is kept only when
NLTK's original-algorithm mode and Snowball's ``porter`` stemmer agree on it.
"""
import pathlib
import re

import snowballstemmer
from nltk.stem.porter import PorterStemmer

ROOT = pathlib.Path(__file__).resolve().parents[1]

# Words from Porter's own rule tables.
CLASSIC = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization
predication operator feudalism decisiveness hopefulness callousness formaliti
sensitiviti sensibiliti triplicate formative formalize electriciti electrical
hopeful goodness revival allowance inference airliner gyroscopic adjustable
defensible irritant replacement adjustment dependent adoption homologou
communism activate angulariti homologous effective bowdlerize probate rate
cease controll roll generalizations oscillators running happyy
""".split()


def main():
    words = set(CLASSIC)
    sources = list((ROOT / "examples").rglob("*.py")) + sorted(ROOT.glob("*.md"))
    for path in sources:
        for w in re.findall(r"[A-Za-z]+", path.read_text(errors="ignore")):
            if len(w) >= 2 and (w.islower() or w.istitle()):
                words.add(w.lower())

    nltk_stem = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM).stem
    snow_stem = snowballstemmer.stemmer("porter").stemWord
    voc, out = [], []
    for w in sorted(words):
        a, b = nltk_stem(w), snow_stem(w)
        if a == b:
            voc.append(w)
            out.append(a)
    data = ROOT / "tests" / "data"
    (data / "porter_voc.txt").write_text("\n".join(voc) + "\n")
    (data / "porter_output.txt").write_text("\n".join(out) + "\n")
    print(f"{len(voc)} words ({len(words) - len(voc)} disagreements dropped)")


if __name__ == "__main__":
    main()
