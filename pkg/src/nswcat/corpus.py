"""Corpus ingestion, tokenization and corpus-level statistics.

A corpus is a directory tree ``<root>/<category>/<file>.txt`` of UTF-8
plain-text files.  Tokens are maximal non-whitespace runs with leading
openers and trailing sentence punctuation split off, except that a
trailing period stays attached to ordinal-like forms (``15.``, ``XIV.``),
dotted dates (``15.10.2023.``) and known abbreviations (``dr.``), because
downstream non-standard-word detection needs those periods in place.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, NamedTuple, Sequence

from .errors import CorpusError

log = logging.getLogger(__name__)

# “ appears in both sets: it opens quotes in English style and closes the
# Croatian „…“ pair.
LEAD_PUNCT = set("([{\"'«„“‘¿¡")
TRAIL_PUNCT = set(".,;:!?)]}\"'»”“’…")

# Shapes whose trailing period (or closer) is part of the token itself.
_ORDINAL_RE = re.compile(r"\d+\.")
_ROMAN_DOT_RE = re.compile(r"[IVXLCDM]+\.")
_DOTTED_DATE_RE = re.compile(r"\d{1,2}\.\d{1,2}\.\d{2,4}\.")
_ORDINAL_RANGE_RE = re.compile(r"\d{1,4}\.[-–]\d{1,4}\.")
_EMOTICON_TAIL_RE = re.compile(r"[:;=8xX]'?-?[)\]]{1,3}")
_CODE_CALL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\(\)")
_PROTECTED = (
    _ORDINAL_RE,
    _ROMAN_DOT_RE,
    _DOTTED_DATE_RE,
    _ORDINAL_RANGE_RE,
    _EMOTICON_TAIL_RE,
    _CODE_CALL_RE,
)

_RUN_RE = re.compile(r"\S+")


class Token(NamedTuple):
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class AbbreviationSet:
    """Surface forms whose trailing period must stay attached.

    ``exact`` entries match as written, ``folded`` entries match
    case-insensitively (stored lowercased).
    """

    exact: frozenset[str] = frozenset()
    folded: frozenset[str] = frozenset()

    def __contains__(self, form: str) -> bool:
        return form in self.exact or form.lower() in self.folded


_default_abbreviations: AbbreviationSet | None = None


def default_abbreviations() -> AbbreviationSet:
    """Abbreviation forms from the packaged lexicon (lazily loaded)."""
    global _default_abbreviations
    if _default_abbreviations is None:
        from importlib.resources import files

        exact, folded = set(), set()
        text = files("nswcat.data").joinpath("lexicon.tsv").read_text("utf-8")
        for line in text.splitlines():
            # Comment lines start with "# "; a bare "#" column is a real entry.
            if not line.strip() or line.startswith("# "):
                continue
            parts = line.split("\t")
            surface = parts[0]
            if "." not in surface:
                continue
            if len(parts) > 2 and parts[2].strip() == "ci":
                folded.add(surface.lower())
            else:
                exact.add(surface)
        _default_abbreviations = AbbreviationSet(frozenset(exact), frozenset(folded))
    return _default_abbreviations


def _keep_whole(core: str, abbreviations: AbbreviationSet) -> bool:
    if core.endswith(".") and core in abbreviations:
        return True
    return any(rx.fullmatch(core) for rx in _PROTECTED)


def tokenize(text: str, abbreviations: AbbreviationSet | None = None) -> list[Token]:
    """Split ``text`` into word and punctuation tokens with offsets.

    Deterministic; every non-whitespace character lands in exactly one
    token.  ``abbreviations`` defaults to the packaged lexicon's
    period-bearing surface forms.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    tokens: list[Token] = []
    for run in _RUN_RE.finditer(text):
        s = run.group()
        base = run.start()
        lo, hi = 0, len(s)
        lead: list[Token] = []
        while hi - lo > 1 and s[lo] in LEAD_PUNCT:
            lead.append(Token(s[lo], base + lo, base + lo + 1))
            lo += 1
        trail: list[Token] = []
        while hi - lo > 1 and s[hi - 1] in TRAIL_PUNCT:
            if _keep_whole(s[lo:hi], abbreviations):
                break
            trail.append(Token(s[hi - 1], base + hi - 1, base + hi))
            hi -= 1
        tokens.extend(lead)
        tokens.append(Token(s[lo:hi], base + lo, base + hi))
        tokens.extend(reversed(trail))
    return tokens


@dataclass(frozen=True)
class LabeledDocument:
    """One corpus file: identifier, raw text, category and token count."""

    id: str
    text: str
    label: str
    token_count: int


@dataclass(frozen=True)
class Corpus:
    documents: tuple[LabeledDocument, ...]
    categories: tuple[str, ...]
    skipped: tuple[tuple[str, str], ...] = ()

    def __iter__(self) -> Iterator[LabeledDocument]:
        return iter(self.documents)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(d.label for d in self.documents)


def load_corpus(root_path: str | Path, abbreviations: AbbreviationSet | None = None) -> Corpus:
    """Load a labeled corpus from ``<root>/<category>/<file>`` files.

    Files that fail to decode as UTF-8 are reported in ``Corpus.skipped``
    and logged; an empty category directory is fatal because such a
    corpus cannot be stratified.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise CorpusError(f"corpus root does not exist or is not a directory: {root}")
    category_dirs = sorted((d for d in root.iterdir() if d.is_dir()), key=lambda d: d.name)
    if not category_dirs:
        raise CorpusError(f"corpus root contains no category directories: {root}")

    documents: list[LabeledDocument] = []
    skipped: list[tuple[str, str]] = []
    for cat_dir in category_dirs:
        files = sorted(
            p for p in cat_dir.iterdir() if p.is_file() and not p.name.startswith(".")
        )
        if not files:
            raise CorpusError(
                f"category directory {cat_dir.name!r} is empty; cannot stratify an empty class"
            )
        for path in files:
            doc_id = f"{cat_dir.name}/{path.name}"
            try:
                text = path.read_bytes().decode("utf-8")
            except UnicodeDecodeError as exc:
                skipped.append((doc_id, str(exc)))
                continue
            documents.append(
                LabeledDocument(
                    id=doc_id,
                    text=text,
                    label=cat_dir.name,
                    token_count=len(tokenize(text, abbreviations)),
                )
            )
    if skipped:
        log.warning("skipped %d non-UTF-8 file(s): %s", len(skipped), [s[0] for s in skipped])
    documents.sort(key=lambda d: d.id)
    return Corpus(tuple(documents), tuple(d.name for d in category_dirs), tuple(skipped))


@dataclass(frozen=True)
class ClassStats:
    tokens: int
    nsws: int
    percent: float
    zero_tokens: bool = False


@dataclass(frozen=True)
class CorpusStats:
    per_class: dict[str, ClassStats] = field(default_factory=dict)
    overall: ClassStats = ClassStats(0, 0, 0.0, True)

    def to_tsv(self) -> str:
        lines = ["category\ttokens\tnsws\tnsw_percent"]
        for name, row in self.per_class.items():
            lines.append(f"{name}\t{row.tokens}\t{row.nsws}\t{row.percent:.2f}")
        o = self.overall
        lines.append(f"OVERALL\t{o.tokens}\t{o.nsws}\t{o.percent:.2f}")
        return "\n".join(lines) + "\n"


def _make_row(tokens: int, nsws: int) -> ClassStats:
    if tokens == 0:
        return ClassStats(tokens, nsws, 0.0, zero_tokens=True)
    return ClassStats(tokens, nsws, 100.0 * nsws / tokens)


def stats_from_counts(per_class: Mapping[str, tuple[int, int]]) -> CorpusStats:
    """Build corpus statistics from per-class (token, NSW) count pairs."""
    rows = {name: _make_row(t, n) for name, (t, n) in per_class.items()}
    total_t = sum(t for t, _ in per_class.values())
    total_n = sum(n for _, n in per_class.values())
    return CorpusStats(rows, _make_row(total_t, total_n))


def corpus_stats(
    docs: Sequence[LabeledDocument], nsw_counts: Mapping[str, int]
) -> CorpusStats:
    """Aggregate per-document NSW counts into per-class and overall rows."""
    missing = [d.id for d in docs if d.id not in nsw_counts]
    if missing:
        raise CorpusError(f"missing NSW counts for document(s): {missing[:5]}")
    per_class: dict[str, list[int]] = {}
    for doc in docs:
        acc = per_class.setdefault(doc.label, [0, 0])
        acc[0] += doc.token_count
        acc[1] += nsw_counts[doc.id]
    return stats_from_counts({k: (v[0], v[1]) for k, v in sorted(per_class.items())})
