#
# The three kinds of synthetic element, and grammars made of them
#

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from .category import Category, arity
from .lambda_term import LambdaTerm, head, leading_binders, Var
from .errors import DuplicateUserKey


def corresponds(category: Category, lf: LambdaTerm) -> bool:
    """Checks that every syntactic argument slot of `category` has a lambda
    in `lf`. Either the lf has as many leading abstractions as the
    category's arity, or its body is headed by one of those bound
    variables, whose (functional) value supplies the remaining slots.

    Parameters
    ----------
    category : Category
        The s-command of an element
    lf : LambdaTerm
        The l-command of the same element

    Returns
    -------
    bool
        Whether the correspondence holds
    """
    n = arity(category)
    if n == 0:
        return True
    binders, body = leading_binders(lf)
    if len(binders) >= n:
        return True
    if not binders:
        return False
    first = head(body)
    return isinstance(first, Var) and first.name in binders


@dataclass(frozen=True)
class Entry:
    """An elementary item `phon | pos :: category : lf`."""
    phon: tuple
    pos: Optional[str]
    category: Category
    lf: LambdaTerm
    key: Optional[int] = None
    weight: float = 1.0

    def __post_init__(self):
        if not self.phon:
            raise ValueError("An entry needs phonological material")
        object.__setattr__(self, "phon", tuple(self.phon))

    @property
    def kind(self) -> str:
        return "entry"

    @property
    def label(self) -> str:
        return " ".join(self.phon)

    def with_key(self, key: int, weight: Optional[float] = None) -> "Entry":
        return replace(self, key=key,
                       weight=self.weight if weight is None else weight)


@dataclass(frozen=True)
class AsymRule:
    """An asymmetric relational rule `#name lhs : lf --> rhs : lf`. The
    rule's first lambda on the right binds the whole lf on the left."""
    name: str
    lhs_cat: Category
    lhs_lf: LambdaTerm
    rhs_cat: Category
    rhs_lf: LambdaTerm
    key: Optional[int] = None
    weight: float = 1.0

    @property
    def kind(self) -> str:
        return "arule"

    @property
    def label(self) -> str:
        return "#" + self.name

    def with_key(self, key: int,
                 weight: Optional[float] = None) -> "AsymRule":
        return replace(self, key=key,
                       weight=self.weight if weight is None else weight)


@dataclass(frozen=True)
class SymSide:
    phon: tuple
    category: Category
    lf: LambdaTerm

    def __post_init__(self):
        if not self.phon:
            raise ValueError("Both sides of a symmetric rule need "
                             "phonological material")
        object.__setattr__(self, "phon", tuple(self.phon))


@dataclass(frozen=True)
class SymRule:
    """A symmetric relational rule `#name phon, cat : lf <--> phon, cat :
    lf`, compiled into two entries tagged with the rule name."""
    name: str
    left: SymSide
    right: SymSide

    @property
    def kind(self) -> str:
        return "symrule"

    @property
    def label(self) -> str:
        return "#" + self.name

    def compile(self) -> list[Entry]:
        return [Entry(side.phon, self.name, side.category, side.lf)
                for side in (self.left, self.right)]


Element = Union[Entry, AsymRule, SymRule]


class Grammar:
    """An ordered collection of grammar elements. Asymmetric rules keep
    the order of the source text, which is the order they apply in.
    """

    def __init__(self, elements=(), name: str = "grammar"):
        """Constructor method

        Parameters
        ----------
        elements : iterable of Element
            Elements in textual order
        name : str [optional, default="grammar"]
            A name for the grammar, usually the stem of its text file
        """
        self._elements = list(elements)
        self._name = name

    def add(self, element: Element):
        self._elements.append(element)

    def get_name(self) -> str:
        return self._name

    def get_elements(self) -> list[Element]:
        return list(self._elements)

    def get_entries(self) -> list[Entry]:
        return [e for e in self._elements if isinstance(e, Entry)]

    def get_arules(self) -> list[AsymRule]:
        return [e for e in self._elements if isinstance(e, AsymRule)]

    def get_symrules(self) -> list[SymRule]:
        return [e for e in self._elements if isinstance(e, SymRule)]

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return self._elements == other._elements

    def __str__(self):
        return (f"Grammar {self._name} with {len(self.get_entries())} "
                f"entries and {len(self.get_arules())} rules")


class SourcedGrammar(Grammar):
    """A grammar ready for the processor: symmetric rules are compiled
    away and every element carries a unique key and a weight."""

    def __init__(self, elements=(), name: str = "grammar"):
        super().__init__(elements, name)
        self._by_key = {}
        for element in self._elements:
            if isinstance(element, SymRule):
                raise ValueError("A sourced grammar cannot contain "
                                 "symmetric rules")
            if element.key is None:
                raise ValueError(f"Element {element.label} has no key")
            if element.key in self._by_key:
                raise DuplicateUserKey(f"Key {element.key} is used twice")
            self._by_key[element.key] = element

    def add(self, element: Element):
        if element.key is None or element.key in self._by_key:
            raise DuplicateUserKey(f"Cannot add {element.label} with key "
                                   f"{element.key}")
        super().add(element)
        self._by_key[element.key] = element

    def get_element(self, key: int) -> Element:
        return self._by_key[key]

    def get_keys(self) -> list[int]:
        return [e.key for e in self._elements]

    def next_key(self) -> int:
        return max(self._by_key, default=0) + 1

    def with_weights(self, weights: dict) -> "SourcedGrammar":
        """A copy whose element weights come from `weights` (key ->
        weight); keys missing from `weights` keep their weight."""
        return SourcedGrammar(
            [e.with_key(e.key, float(weights.get(e.key, e.weight)))
             for e in self._elements], self._name)
