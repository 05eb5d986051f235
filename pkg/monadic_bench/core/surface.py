#
# Splitting an input expression into surface items
#

from dataclasses import dataclass

from .errors import UnbalancedMweBars


@dataclass(frozen=True)
class SurfaceItem:
    """One item of an input expression. `is_mwe` marks a `|...|` group,
    `bound_before` a `+` seam joining it to the previous item."""
    text: str
    is_mwe: bool = False
    bound_before: bool = False

    @property
    def words(self) -> tuple:
        return tuple(self.text.split())

    def __str__(self):
        return f"|{self.text}|" if self.is_mwe else self.text


def tokenize(text: str) -> list[SurfaceItem]:
    """Splits `text` into items. Whitespace separates items, `|a b|` makes
    one multi-word item and `a+b` makes two items joined by a bound seam.

    Parameters
    ----------
    text : str
        The expression as typed

    Returns
    -------
    list[SurfaceItem]
        The items in order

    Raises
    ------
    UnbalancedMweBars
        If the bars do not pair up, or a pair encloses nothing
    """
    segments = text.split("|")
    if len(segments) % 2 == 0:
        raise UnbalancedMweBars(f"Unbalanced MWE bars in {text.strip()!r}")
    items = []
    for i, segment in enumerate(segments):
        if i % 2:
            words = segment.split()
            if not words:
                raise UnbalancedMweBars(f"Empty MWE in {text.strip()!r}")
            items.append(SurfaceItem(" ".join(words), is_mwe=True))
            continue
        for token in segment.split():
            parts = [part for part in token.split("+") if part]
            for j, part in enumerate(parts):
                items.append(SurfaceItem(part, bound_before=j > 0))
    return items


def surface_text(items) -> str:
    """Prints items back, with bars around MWEs and `+` on bound seams."""
    text = ""
    for item in items:
        if text:
            text += "+" if item.bound_before else " "
        text += str(item)
    return text
