"""The 52 case-distinguished English letter classes and their file-safe names."""

import string

from .errors import UnknownLabel

# Code-point order: A..Z then a..z. Position is the class index.
LABELS = tuple(string.ascii_uppercase + string.ascii_lowercase)
CLASS_INDEX = {ch: i for i, ch in enumerate(LABELS)}


def label_name(label: str) -> str:
    """``'A'`` -> ``'upper_A'``, ``'a'`` -> ``'lower_a'``."""
    if label not in CLASS_INDEX:
        raise UnknownLabel(label)
    return ("upper_" if label.isupper() else "lower_") + label


def parse_label_name(name: str) -> str:
    prefix, _, ch = name.partition("_")
    if len(ch) == 1 and ch in CLASS_INDEX:
        if (prefix == "upper" and ch.isupper()) or (prefix == "lower" and ch.islower()):
            return ch
    raise UnknownLabel(name)
