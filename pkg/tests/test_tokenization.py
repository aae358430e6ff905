"""
Tests for tokenization into Segments.
"""

import pytest

from alignment_metrics import Segment, TokenizerPolicy, tokenize
from alignment_metrics.tokenization import normalize_whitespace


def test_whitespace():
    assert tokenize("the cat sat", "whitespace").tokens == ("the", "cat", "sat")


def test_empty_text():
    assert len(tokenize("", TokenizerPolicy.WHITESPACE)) == 0
    assert len(tokenize(" \t\n ", TokenizerPolicy.PUNCT)) == 0


def test_punct_split():
    assert tokenize("cat.", "punct").tokens == ("cat", ".")
    assert tokenize("(cat).", "punct").tokens == ("(", "cat", ")", ".")


def test_inner_punctuation_kept():
    assert tokenize("don't stop, U.S.", "punct").tokens == ("don't", "stop", ",", "U.S", ".")


def test_punctuation_only_word():
    assert tokenize("wait ...", "punct").tokens == ("wait", ".", ".", ".")


def test_case_preserved():
    assert tokenize("The Cat", "punct").tokens == ("The", "Cat")


def test_unicode_whitespace():
    assert tokenize("a　b c", "whitespace").tokens == ("a", "b", "c")


def test_source_text_kept():
    segment = tokenize("  the  cat ", "whitespace")
    assert segment.source_text == "  the  cat "
    assert " ".join(segment) == normalize_whitespace(segment.source_text)


def test_retokenizing_is_stable():
    """Re-tokenizing the space-joined tokens yields the same tokens."""
    for text in ["the cat sat", " a  b\tc\n", "", "x"]:
        first = tokenize(text, "whitespace")
        assert tokenize(" ".join(first), "whitespace").tokens == first.tokens
    for text in ["cat.", "(hello), world!", "a -- b"]:
        first = tokenize(text, "punct")
        assert tokenize(" ".join(first), "punct").tokens == first.tokens


def test_segment_rejects_empty_tokens():
    with pytest.raises(ValueError):
        Segment(("a", ""))


def test_unknown_policy():
    with pytest.raises(ValueError):
        tokenize("a b", "moses")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
