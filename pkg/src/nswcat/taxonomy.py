"""The 56-leaf non-standard-word taxonomy.

Leaves are grouped into three superclasses (STRING 15, NUMBER 21,
COMBINED 20) and occupy fixed feature slots 0..55 in that order.  The
manifest additionally tags each leaf with the cross-leaf groups whose
totals appear in the derived feature block.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import TaxonomyError

SUPERCLASSES = ("STRING", "NUMBER", "COMBINED")
SUPERCLASS_COUNTS = {"STRING": 15, "NUMBER": 21, "COMBINED": 20}
SUPERCLASS_SLOTS = {"STRING": range(0, 15), "NUMBER": range(15, 36), "COMBINED": range(36, 56)}
LEAF_COUNT = 56

# Fixed order of the cross-leaf group totals in the derived feature block.
GROUPS = (
    "full_date",
    "incomplete_date",
    "references",
    "numeration",
    "telephone",
    "range",
    "decimal",
    "fractions",
    "road",
    "electronic_addresses",
    "ordinal",
    "nominal",
    "roman",
    "abbreviations",
    "measurement_units",
    "acronyms",
    "office_designation",
    "formulas",
    "jargon",
)


@dataclass(frozen=True)
class NSWType:
    """One taxonomy leaf; ``id`` doubles as the feature slot index."""

    id: int
    name: str
    superclass: str
    groups: tuple[str, ...] = ()
    description: str = ""


class Taxonomy:
    def __init__(self, types: tuple[NSWType, ...]):
        self.types = types
        self.by_name = {t.name: t for t in types}
        self.by_id = {t.id: t for t in types}

    def __iter__(self):
        return iter(self.types)

    def __len__(self) -> int:
        return len(self.types)

    def group_members(self, group: str) -> tuple[int, ...]:
        if group not in GROUPS:
            raise TaxonomyError(f"unknown group name: {group!r}")
        return tuple(t.id for t in self.types if group in t.groups)

    def leaves(self, superclass: str) -> tuple[NSWType, ...]:
        return tuple(t for t in self.types if t.superclass == superclass)


def _default_manifest_path() -> Path:
    from importlib.resources import files

    return Path(str(files("nswcat.data").joinpath("taxonomy.tsv")))


def load_taxonomy(path: str | Path | None = None) -> Taxonomy:
    """Load and validate the taxonomy manifest.

    Format: ``id<TAB>name<TAB>superclass[<TAB>groups[<TAB>description]]``
    with ``groups`` a comma-separated list or ``-``.  Exactly 56 leaves
    with superclass counts 15/21/20 are required; ids must be the slots
    0..55 in superclass block order.
    """
    manifest = Path(path) if path is not None else _default_manifest_path()
    if not manifest.is_file():
        raise TaxonomyError(f"taxonomy manifest not found: {manifest}")

    types: list[NSWType] = []
    seen_ids: dict[int, int] = {}
    seen_names: dict[str, int] = {}
    for lineno, raw in enumerate(manifest.read_text("utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 3:
            raise TaxonomyError(f"{manifest.name}:{lineno}: expected at least 3 columns")
        try:
            leaf_id = int(parts[0])
        except ValueError:
            raise TaxonomyError(f"{manifest.name}:{lineno}: id is not an integer: {parts[0]!r}")
        name, superclass = parts[1].strip(), parts[2].strip()
        if superclass not in SUPERCLASSES:
            raise TaxonomyError(
                f"{manifest.name}:{lineno}: unknown superclass {superclass!r} for {name!r}"
            )
        if leaf_id in seen_ids:
            raise TaxonomyError(
                f"{manifest.name}:{lineno}: duplicate id {leaf_id} (first on line {seen_ids[leaf_id]})"
            )
        if name in seen_names:
            raise TaxonomyError(
                f"{manifest.name}:{lineno}: duplicate name {name!r} (first on line {seen_names[name]})"
            )
        seen_ids[leaf_id] = lineno
        seen_names[name] = lineno
        groups: tuple[str, ...] = ()
        if len(parts) > 3 and parts[3].strip() not in ("", "-"):
            groups = tuple(g.strip() for g in parts[3].split(","))
            for g in groups:
                if g not in GROUPS:
                    raise TaxonomyError(
                        f"{manifest.name}:{lineno}: unknown group tag {g!r} for {name!r}"
                    )
        description = parts[4].strip() if len(parts) > 4 else ""
        types.append(NSWType(leaf_id, name, superclass, groups, description))

    missing = sorted(set(range(LEAF_COUNT)) - set(seen_ids))
    if missing:
        raise TaxonomyError(
            f"{manifest.name}: missing leaf slot(s) {missing}; need ids 0..{LEAF_COUNT - 1}"
        )
    extra = sorted(set(seen_ids) - set(range(LEAF_COUNT)))
    if extra:
        raise TaxonomyError(f"{manifest.name}: unexpected leaf id(s) {extra}")

    types.sort(key=lambda t: t.id)
    for superclass, slots in SUPERCLASS_SLOTS.items():
        block = [t for t in types if t.superclass == superclass]
        if len(block) != SUPERCLASS_COUNTS[superclass]:
            raise TaxonomyError(
                f"{manifest.name}: superclass {superclass} has {len(block)} leaves, "
                f"expected {SUPERCLASS_COUNTS[superclass]}"
            )
        bad = [t.name for t in block if t.id not in slots]
        if bad:
            raise TaxonomyError(
                f"{manifest.name}: {superclass} leaves outside slots "
                f"{slots.start}..{slots.stop - 1}: {bad}"
            )

    taxonomy = Taxonomy(tuple(types))
    empty = [g for g in GROUPS if not taxonomy.group_members(g)]
    if empty:
        raise TaxonomyError(f"{manifest.name}: group(s) without member leaves: {empty}")
    return taxonomy
