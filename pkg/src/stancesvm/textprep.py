"""Comment normalization, emoticon handling, tokenization and stemming."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

from .porter import porter_stem

URL_TOKEN = "URL"
HANDLE_TOKEN = "__HANDLE"
SPECIAL_TOKENS = frozenset({URL_TOKEN, HANDLE_TOKEN})

_URL_PREFIXES = ("www.", "http://", "https://")
_REPEAT_RE = re.compile(r"(.)\1{2,}", re.DOTALL)
_STEMMABLE_RE = re.compile(r"[a-z]+")


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Verdict(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NONE = "none"


# Reconstructed default set; entries are stored already case-folded and
# repeat-collapsed, since lookups happen after normalize().
DEFAULT_EMOTICONS = {
    ":)": Polarity.POSITIVE,
    ":-)": Polarity.POSITIVE,
    ":))": Polarity.POSITIVE,
    ":d": Polarity.POSITIVE,
    "=)": Polarity.POSITIVE,
    "<3": Polarity.POSITIVE,
    ":(": Polarity.NEGATIVE,
    ":-(": Polarity.NEGATIVE,
    ":((": Polarity.NEGATIVE,
    ":'(": Polarity.NEGATIVE,
}


@dataclass(frozen=True)
class EmoticonLexicon:
    entries: MappingProxyType = field(default_factory=lambda: MappingProxyType(dict(DEFAULT_EMOTICONS)))

    def __post_init__(self):
        cleaned = {}
        for emoticon, polarity in dict(self.entries).items():
            if not emoticon or any(ch.isspace() for ch in emoticon):
                raise ValueError(f"invalid emoticon entry {emoticon!r}")
            cleaned[emoticon.lower()] = Polarity(polarity)
        object.__setattr__(self, "entries", MappingProxyType(cleaned))

    def lookup(self, token: str) -> Polarity | None:
        return self.entries.get(token.lower())

    def to_dict(self) -> dict[str, str]:
        return {k: v.value for k, v in sorted(self.entries.items())}

    @classmethod
    def from_dict(cls, data) -> "EmoticonLexicon":
        return cls(MappingProxyType({k: Polarity(v) for k, v in data.items()}))

    @classmethod
    def load(cls, path) -> "EmoticonLexicon":
        """Read ``<emoticon><TAB><positive|negative>`` lines."""
        entries = {}
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.split("\n"), start=1):
            line = line.rstrip("\r")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<emoticon>\\t<polarity>'")
            emoticon, polarity = parts[0].strip(), parts[1].strip().lower()
            try:
                entries[emoticon] = Polarity(polarity)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unknown polarity {parts[1]!r}") from None
        if not entries:
            raise ValueError(f"{path}: lexicon is empty")
        return cls(MappingProxyType(entries))


@dataclass(frozen=True)
class EmoticonVerdict:
    positive_hits: int = 0
    negative_hits: int = 0

    @property
    def verdict(self) -> Verdict:
        if self.positive_hits > self.negative_hits:
            return Verdict.POSITIVE
        if self.negative_hits > self.positive_hits:
            return Verdict.NEGATIVE
        return Verdict.NONE

    @property
    def decisive(self) -> bool:
        return self.verdict is not Verdict.NONE


@dataclass(frozen=True)
class PreprocessedDoc:
    tokens: tuple[str, ...]
    verdict: EmoticonVerdict


def collapse_repeats(text: str) -> str:
    """Shorten every run of three or more identical characters to two."""
    return _REPEAT_RE.sub(r"\1\1", text)


def _is_url(token: str) -> bool:
    return token.startswith(_URL_PREFIXES)


def _normalize_token(token: str) -> str:
    # The hashtag strip runs before the URL/handle checks, and the URL check
    # also looks at the repeat-collapsed form, so that normalize() is
    # idempotent ("#@bob", "htttp://x"). Marker tokens from an earlier pass
    # are kept as they are.
    if token in SPECIAL_TOKENS:
        return token
    token = token.lower().lstrip("#")
    if _is_url(token) or _is_url(collapse_repeats(token)):
        return URL_TOKEN
    if token.startswith("@") and len(token) > 1:
        return HANDLE_TOKEN
    return token


def normalize(raw: str) -> str:
    """Lowercase, mask URLs and @handles, drop hashtags' ``#``, trim, collapse repeats."""
    tokens = (_normalize_token(t) for t in raw.split())
    return collapse_repeats(" ".join(t for t in tokens if t))


def apply_emoticons(text: str, lexicon: EmoticonLexicon) -> tuple[str, EmoticonVerdict]:
    pos = neg = 0
    out = []
    for token in text.split():
        polarity = lexicon.lookup(token)
        if polarity is Polarity.POSITIVE:
            pos += 1
            out.append("positive")
        elif polarity is Polarity.NEGATIVE:
            neg += 1
            out.append("negative")
        else:
            out.append(token)
    return " ".join(out), EmoticonVerdict(pos, neg)


def _keep_char(ch: str) -> bool:
    return ch.isalnum() or ch in "'_"


def tokenize(text: str) -> list[str]:
    tokens = []
    for chunk in text.split():
        if chunk in SPECIAL_TOKENS:
            tokens.append(chunk)
            continue
        start, end = 0, len(chunk)
        while start < end and not _keep_char(chunk[start]):
            start += 1
        while end > start and not _keep_char(chunk[end - 1]):
            end -= 1
        if start < end:
            tokens.append(chunk[start:end])
    return tokens


def stem_token(token: str) -> str:
    """Porter-stem plain lowercase words; everything else passes through."""
    if token in SPECIAL_TOKENS or not _STEMMABLE_RE.fullmatch(token):
        return token
    # a bare "s" would stem to nothing
    return porter_stem(token) or token


def preprocess(raw: str, lexicon: EmoticonLexicon | None = None) -> PreprocessedDoc:
    if lexicon is None:
        lexicon = DEFAULT_LEXICON
    text, verdict = apply_emoticons(normalize(raw), lexicon)
    return PreprocessedDoc(tuple(stem_token(t) for t in tokenize(text)), verdict)


DEFAULT_LEXICON = EmoticonLexicon()
