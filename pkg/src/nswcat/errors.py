"""Exception hierarchy shared across the toolkit.

Every data-level failure raises a subclass of :class:`NswcatError` so the
command line can map it to a single exit code (2) while usage mistakes
stay on exit code 1.
"""


class NswcatError(Exception):
    """Base class for all toolkit errors."""


class CorpusError(NswcatError):
    """Corpus directory missing, unreadable, or structurally invalid."""


class TaxonomyError(NswcatError):
    """Taxonomy manifest fails validation."""


class LexiconError(NswcatError):
    """Lexicon file fails validation."""


class RuleError(NswcatError):
    """Rule file fails validation or a pattern does not compile."""


class FeatureError(NswcatError):
    """Feature vectors or matrices violate their contracts."""


class ModelError(NswcatError):
    """Training or prediction received invalid input."""


class ModelFormatError(ModelError):
    """A serialized model stream is corrupt; message carries the offset."""


class HarnessError(NswcatError):
    """Cross-validation or experiment configuration is invalid."""
