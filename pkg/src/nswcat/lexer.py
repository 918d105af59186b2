"""Non-standard-word detection over tokenized text.

Detection combines two data-driven sources: a lexicon of literal surface
forms and a rule set of token-shape patterns (anchored regexes over a
window of at most 6 consecutive tokens).  At each scan position the
highest-priority match wins, longer matches break priority ties, and the
scan consumes the matched tokens, so occurrences never overlap.

Language-specific surface forms live entirely in the packaged data files
(``lexicon.tsv``, ``rules.tsv``); the engine itself is language-neutral.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import AbbreviationSet, LabeledDocument, Token, tokenize
from .errors import LexiconError, RuleError
from .taxonomy import NSWType, Taxonomy

MAX_WINDOW = 6
LEXICON_PRIORITY = 150


def _data_path(name: str) -> Path:
    from importlib.resources import files

    return Path(str(files("nswcat.data").joinpath(name)))


@dataclass(frozen=True)
class NSWOccurrence:
    """A typed span of non-standard text within one document."""

    doc_id: str
    type: NSWType
    start: int
    end: int
    surface: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


class Lexicon:
    """Literal surface forms mapped to taxonomy leaves.

    Case-sensitive entries are looked up as written; entries flagged
    ``ci`` match case-insensitively.
    """

    def __init__(self, exact: dict[str, NSWType], folded: dict[str, NSWType]):
        self._exact = exact
        self._folded = folded

    def __len__(self) -> int:
        return len(self._exact) + len(self._folded)

    def lookup(self, surface: str) -> NSWType | None:
        hit = self._exact.get(surface)
        if hit is None:
            hit = self._folded.get(surface.lower())
        return hit

    def abbreviation_forms(self) -> AbbreviationSet:
        """Period-bearing surfaces, for period-preserving tokenization."""
        return AbbreviationSet(
            exact=frozenset(s for s in self._exact if "." in s),
            folded=frozenset(s for s in self._folded if "." in s),
        )

    def types(self) -> set[NSWType]:
        return set(self._exact.values()) | set(self._folded.values())


def load_lexicon(path: str | Path | None, taxonomy: Taxonomy) -> Lexicon:
    """Load ``surface<TAB>type_name[<TAB>ci]`` lexicon entries.

    Entries must name STRING- or COMBINED-superclass leaves; duplicate
    surfaces and unknown type names are fatal.
    """
    lex_path = Path(path) if path is not None else _data_path("lexicon.tsv")
    if not lex_path.is_file():
        raise LexiconError(f"lexicon file not found: {lex_path}")
    exact: dict[str, NSWType] = {}
    folded: dict[str, NSWType] = {}
    for lineno, raw in enumerate(lex_path.read_text("utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        # Comment lines start with "# "; a bare "#" surface is a real entry.
        if not line.strip() or line.startswith("# "):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise LexiconError(f"{lex_path.name}:{lineno}: expected surface<TAB>type_name")
        surface, type_name = parts[0], parts[1].strip()
        ci = len(parts) > 2 and parts[2].strip() == "ci"
        leaf = taxonomy.by_name.get(type_name)
        if leaf is None:
            raise LexiconError(f"{lex_path.name}:{lineno}: unknown NSW type {type_name!r}")
        if leaf.superclass == "NUMBER":
            raise LexiconError(
                f"{lex_path.name}:{lineno}: lexicon entries must map to STRING or "
                f"COMBINED leaves, got NUMBER leaf {type_name!r}"
            )
        key = surface.lower() if ci else surface
        if key in exact or key in folded or (not ci and surface.lower() in folded):
            raise LexiconError(f"{lex_path.name}:{lineno}: duplicate surface {surface!r}")
        (folded if ci else exact)[key] = leaf
    return Lexicon(exact, folded)


@dataclass(frozen=True)
class Rule:
    name: str
    type: NSWType
    priority: int
    patterns: tuple[re.Pattern[str], ...]

    def __len__(self) -> int:
        return len(self.patterns)


class RuleSet:
    def __init__(self, rules: tuple[Rule, ...]):
        self.rules = rules
        # Pre-sorted so the scan can take the first hit: priority desc,
        # then longer window, then file order.
        order = sorted(
            range(len(rules)),
            key=lambda i: (-rules[i].priority, -len(rules[i]), i),
        )
        self._ordered = tuple(rules[i] for i in order)

    def __iter__(self):
        return iter(self._ordered)

    def __len__(self) -> int:
        return len(self.rules)

    def types(self) -> set[NSWType]:
        return {r.type for r in self.rules}


def load_rules(path: str | Path | None, taxonomy: Taxonomy) -> RuleSet:
    """Load ``name<TAB>type_name<TAB>priority<TAB>pattern`` rules.

    ``pattern`` is a space-separated sequence of anchored token regexes;
    a rule may span at most 6 tokens.
    """
    rule_path = Path(path) if path is not None else _data_path("rules.tsv")
    if not rule_path.is_file():
        raise RuleError(f"rule file not found: {rule_path}")
    rules: list[Rule] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(rule_path.read_text("utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("# "):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise RuleError(f"{rule_path.name}:{lineno}: expected 4 tab-separated columns")
        name, type_name, prio_s, pattern = (p.strip() for p in parts)
        if name in seen:
            raise RuleError(
                f"{rule_path.name}:{lineno}: duplicate rule name {name!r} "
                f"(first on line {seen[name]})"
            )
        seen[name] = lineno
        leaf = taxonomy.by_name.get(type_name)
        if leaf is None:
            raise RuleError(f"{rule_path.name}:{lineno}: unknown NSW type {type_name!r}")
        try:
            priority = int(prio_s)
        except ValueError:
            raise RuleError(f"{rule_path.name}:{lineno}: priority is not an integer: {prio_s!r}")
        token_patterns = pattern.split(" ")
        if not 1 <= len(token_patterns) <= MAX_WINDOW:
            raise RuleError(
                f"{rule_path.name}:{lineno}: rule spans {len(token_patterns)} tokens, "
                f"limit is {MAX_WINDOW}"
            )
        compiled = []
        for tp in token_patterns:
            try:
                compiled.append(re.compile(tp))
            except re.error as exc:
                raise RuleError(f"{rule_path.name}:{lineno}: bad pattern {tp!r}: {exc}")
        rules.append(Rule(name, leaf, priority, tuple(compiled)))
    return RuleSet(tuple(rules))


def classify_token(
    tokens: Sequence[Token], position: int, lexicon: Lexicon, rules: RuleSet
) -> tuple[NSWType, int] | None:
    """Match rules and lexicon at ``position``; return (type, consumed).

    The winner is the highest-priority match; ties go to the longer
    match, then to rule-file order, with the lexicon slotted in at its
    fixed priority.  Standard words return ``None``.
    """
    n = len(tokens)
    best: tuple[NSWType, int] | None = None
    # Rules come pre-sorted by (priority desc, width desc, file order), so
    # the first hit is the best rule match.
    for rule in rules:
        width = len(rule)
        if position + width > n:
            continue
        if all(
            rule.patterns[j].fullmatch(tokens[position + j].text) for j in range(width)
        ):
            best = (rule.type, width)
            best_priority = rule.priority
            break
    hit = lexicon.lookup(tokens[position].text)
    if hit is not None and (best is None or (LEXICON_PRIORITY, 1) > (best_priority, best[1])):
        best = (hit, 1)
    return best


def extract_nsws(
    doc: LabeledDocument, lexicon: Lexicon, rules: RuleSet
) -> list[NSWOccurrence]:
    """Greedy left-to-right scan producing non-overlapping occurrences."""
    tokens = tokenize(doc.text, lexicon.abbreviation_forms())
    occurrences: list[NSWOccurrence] = []
    i = 0
    while i < len(tokens):
        match = classify_token(tokens, i, lexicon, rules)
        if match is None:
            i += 1
            continue
        leaf, consumed = match
        start = tokens[i].start
        end = tokens[i + consumed - 1].end
        occurrences.append(
            NSWOccurrence(doc.id, leaf, start, end, doc.text[start:end])
        )
        i += consumed
    return occurrences


def uncovered_leaves(
    taxonomy: Taxonomy, lexicon: Lexicon, rules: RuleSet,
    superclasses: tuple[str, ...] = ("NUMBER", "COMBINED"),
) -> list[str]:
    """Self-test: leaves of the given superclasses reachable by no rule
    or lexicon entry."""
    covered = {t.name for t in rules.types()} | {t.name for t in lexicon.types()}
    return [
        t.name
        for t in taxonomy
        if t.superclass in superclasses and t.name not in covered
    ]


def occurrences_tsv(occurrences: Sequence[NSWOccurrence]) -> str:
    """Occurrence dump: one ``doc_id start end type surface`` line each,
    sorted by (doc_id, start)."""
    lines = [
        f"{o.doc_id}\t{o.start}\t{o.end}\t{o.type.name}\t{o.surface}"
        for o in sorted(occurrences, key=lambda o: (o.doc_id, o.start))
    ]
    return "\n".join(lines) + ("\n" if lines else "")
