#
# Syntactic types: basic, complex, singleton and meta categories
#

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

FORWARD = "/"
BACKWARD = "\\"

DOT = "."
DIAMOND = "^"
STAR = "*"
CROSS = "+"
MODALITIES = (DOT, DIAMOND, STAR, CROSS)


def is_variable(value: str) -> bool:
    """Feature values starting with `?` are variables."""
    return value.startswith("?")


class FeatureBundle:
    """An unordered bundle of `feature=value` pairs on a basic category.
    Values are identifier constants or `?` variables. Equality ignores the
    order of the pairs, printing keeps the order they were written in.
    """

    __slots__ = ("_pairs",)

    def __init__(self, pairs=()):
        """Constructor method

        Parameters
        ----------
        pairs : iterable of (str, str)
            The feature/value pairs

        Raises
        ------
        ValueError
            If a feature name occurs twice
        """
        pairs = tuple((str(name), str(value)) for name, value in pairs)
        names = [name for name, _ in pairs]
        if len(set(names)) != len(names):
            raise ValueError(f"Feature names must be unique within a bundle "
                             f"({', '.join(names)})")
        self._pairs = pairs

    @property
    def pairs(self) -> tuple:
        return self._pairs

    def get(self, name: str, default=None):
        for feature, value in self._pairs:
            if feature == name:
                return value
        return default

    def names(self) -> list[str]:
        return [name for name, _ in self._pairs]

    def variables(self) -> set[str]:
        return {value for _, value in self._pairs if is_variable(value)}

    def __len__(self):
        return len(self._pairs)

    def __iter__(self):
        return iter(self._pairs)

    def __bool__(self):
        return bool(self._pairs)

    def __eq__(self, other):
        if not isinstance(other, FeatureBundle):
            return NotImplemented
        return frozenset(self._pairs) == frozenset(other._pairs)

    def __hash__(self):
        return hash(frozenset(self._pairs))

    def __repr__(self):
        return f"FeatureBundle({list(self._pairs)!r})"

    def __str__(self):
        if not self._pairs:
            return ""
        return "[" + ",".join(f"{n}={v}" for n, v in self._pairs) + "]"


EMPTY_BUNDLE = FeatureBundle()


@dataclass(frozen=True)
class SlashSpec:
    """Direction, order and modality of a slash. Double slashes carry no
    modal control and are always stored with the dot modality.
    """
    direction: str
    double: bool = False
    modality: str = DOT

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"Unknown slash direction {self.direction!r}")
        if self.modality not in MODALITIES:
            raise ValueError(f"Unknown slash modality {self.modality!r}")
        if self.double and self.modality != DOT:
            object.__setattr__(self, "modality", DOT)

    @property
    def forward(self) -> bool:
        return self.direction == FORWARD

    def __str__(self):
        text = self.direction * 2 if self.double else self.direction
        return text if self.modality == DOT else text + self.modality


@dataclass(frozen=True)
class Basic:
    name: str
    features: FeatureBundle = EMPTY_BUNDLE

    def __str__(self):
        return self.name + str(self.features)


@dataclass(frozen=True)
class Complex:
    result: "Category"
    slash: SlashSpec
    argument: "Category"

    def __str__(self):
        return _wrap(self.result) + str(self.slash) + _wrap(self.argument)


@dataclass(frozen=True)
class Singleton:
    text: str

    def __str__(self):
        return '"' + self.text + '"'


@dataclass(frozen=True)
class Meta:
    var: str

    def __str__(self):
        return "@" + self.var


Category = Union[Basic, Complex, Singleton, Meta]


def _wrap(c: Category) -> str:
    return f"({c})" if isinstance(c, Complex) else str(c)


def normalize_singleton(text: str) -> Singleton:
    """Builds a singleton from quoted or unquoted text, collapsing
    interior whitespace."""
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "'\"":
        text = text[1:-1]
    return Singleton(" ".join(text.split()))


def cat_equal(a: Category, b: Category) -> bool:
    """Structural identity of two categories up to feature order.

    Parameters
    ----------
    a : Category
        First category
    b : Category
        Second category

    Returns
    -------
    bool
        True iff both categories have the same shape, names, slashes and
        feature bundles
    """
    return a == b


def arity(c: Category) -> int:
    """Number of argument slots along the result spine of `c`."""
    n = 0
    while isinstance(c, Complex):
        n += 1
        c = c.result
    return n


def skeleton(c: Category) -> Category:
    """The same category with every feature bundle emptied."""
    if isinstance(c, Basic):
        return Basic(c.name) if c.features else c
    if isinstance(c, Complex):
        return Complex(skeleton(c.result), c.slash, skeleton(c.argument))
    return c


def spine(c: Category) -> list[Complex]:
    """The functors met walking down the result spine, outermost first."""
    functors = []
    while isinstance(c, Complex):
        functors.append(c)
        c = c.result
    return functors


def category_variables(c: Category) -> set[str]:
    """Feature variables (`?x`) and meta variables (`@X`) occurring in `c`.
    """
    if isinstance(c, Basic):
        return c.features.variables()
    if isinstance(c, Complex):
        return category_variables(c.result) | category_variables(c.argument)
    if isinstance(c, Meta):
        return {"@" + c.var}
    return set()


def contains_meta(c: Category) -> bool:
    if isinstance(c, Meta):
        return True
    if isinstance(c, Complex):
        return contains_meta(c.result) or contains_meta(c.argument)
    return False


def result_has_singleton(c: Category) -> bool:
    """True if a singleton appears as the result of some complex category
    inside `c`. Singletons are domains only."""
    if not isinstance(c, Complex):
        return False
    return (isinstance(c.result, Singleton) or result_has_singleton(c.result)
            or result_has_singleton(c.argument))


def basic_categories(c: Category) -> list[Basic]:
    """All basic categories occurring in `c`, left to right."""
    if isinstance(c, Basic):
        return [c]
    if isinstance(c, Complex):
        return basic_categories(c.result) + basic_categories(c.argument)
    return []
