"""
Sentence tokenization into Segments.
"""

import re
import string
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Tuple, Union

_PUNCT = re.escape(string.punctuation)
# leading punctuation, body, trailing punctuation
_AFFIXES = re.compile(rf"^([{_PUNCT}]*)(.*?)([{_PUNCT}]*)$", re.DOTALL)


class TokenizerPolicy(str, Enum):
    """How raw sentences are split into tokens."""

    WHITESPACE = "whitespace"
    PUNCT = "punct"


@dataclass(frozen=True)
class Segment:
    """Ordered tokens of one hypothesis or reference sentence."""

    tokens: Tuple[str, ...]
    source_text: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if any(not token for token in self.tokens):
            raise ValueError("segment tokens must be non-empty strings")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, index: int) -> str:
        return self.tokens[index]

    def __str__(self) -> str:
        return " ".join(self.tokens)


def normalize_whitespace(text: str) -> str:
    """Collapse unicode whitespace runs to single spaces and strip the ends."""
    return " ".join(text.split())


def _split_affixes(word: str) -> List[str]:
    lead, body, trail = _AFFIXES.match(word).groups()
    if not body:
        # a word made only of punctuation splits into its characters
        return list(lead + trail)
    return list(lead) + [body] + list(trail)


def tokenize(text: str, policy: Union[str, TokenizerPolicy] = TokenizerPolicy.PUNCT) -> Segment:
    """
    Split ``text`` into a Segment.

    ``whitespace`` splits on unicode whitespace runs. ``punct`` additionally
    separates leading and trailing ASCII punctuation characters from each
    word, one token per character; inner punctuation ("don't", "U.S") stays.
    """
    policy = TokenizerPolicy(policy)
    words = text.split()
    if policy is TokenizerPolicy.PUNCT:
        tokens = [piece for word in words for piece in _split_affixes(word)]
    else:
        tokens = words
    return Segment(tuple(tokens), text)
