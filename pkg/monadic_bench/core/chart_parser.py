#
# CKY chart analysis of an expression in a sourced grammar
#

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .category import (Category, Basic, Complex, Singleton, Meta, SlashSpec,
                       FORWARD, BACKWARD, category_variables)
from .lambda_term import LambdaTerm, Var, Const, Abs, App
from .elements import SourcedGrammar
from .evaluator import beta_reduce
from .unification import unify_cat, rename_apart_all
from .combinators import combine, nf_admissible, rule_semantics
from .processor_config import ProcessorConfig
from .surface import SurfaceItem, tokenize
from .errors import ChartOverflow, NoGrammarLoaded

logger = logging.getLogger(__name__)

LEX = "lex"
ARULE = "arule"
COMBINE = "combine"
OOV = "oov"
SINGLETON = "singleton"

IDENTITY = Abs("p", Var("p"))
OOV_CATEGORIES = (
    Complex(Meta("X"), SlashSpec(BACKWARD), Meta("X")),
    Complex(Meta("X"), SlashSpec(FORWARD), Meta("X")),
)


@dataclass(frozen=True, eq=False)
class ChartItem:
    """A node of the chart. Leaves come from the lexicon (`lex`), from
    singleton matching (`singleton`) or from the unknown-item dummies
    (`oov`); `arule` items have one child, `combine` items two.

    `source_lf` is the lf the node's own step contributes: the entry lf of
    a leaf, the right-hand lf of a relational rule.
    """
    category: Category
    lf: LambdaTerm
    span: tuple
    kind: str
    key: Optional[int] = None
    rule_id: Optional[str] = None
    children: tuple = ()
    applied_rules: frozenset = frozenset()
    label: str = ""
    source_lf: Optional[LambdaTerm] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def structure(self) -> tuple:
        """A nested tuple describing the derivation below this item."""
        if self.kind == COMBINE:
            return (self.rule_id,) + tuple(child.structure()
                                           for child in self.children)
        own = (self.kind, self.key if self.key is not None else 0,
               self.label, str(self.category))
        return own + tuple(child.structure() for child in self.children)


class Derivation:
    """A complete analysis: the derivation tree under a root item that
    spans the whole input."""

    def __init__(self, root: ChartItem):
        self._root = root

    def get_root(self) -> ChartItem:
        return self._root

    @property
    def category(self) -> Category:
        return self._root.category

    @property
    def lf(self) -> LambdaTerm:
        return self._root.lf

    def leaves(self) -> list[ChartItem]:
        return self._root.leaves()

    def steps(self) -> list[ChartItem]:
        """Every item of the tree, children before parents."""
        ordered = []

        def visit(item):
            for child in item.children:
                visit(child)
            ordered.append(item)
        visit(self._root)
        return ordered

    def features(self) -> Counter:
        """How often each element key is used (entries injected and
        relational rules fired)."""
        return Counter(item.key for item in self.steps()
                       if item.kind in (LEX, ARULE) and item.key is not None)

    def replay(self, max_steps: int = 10000) -> LambdaTerm:
        """Recomputes the root lf bottom-up from the leaves' lfs and the
        rules used."""
        def run(item):
            if item.kind == COMBINE:
                left, right = (run(child) for child in item.children)
                return beta_reduce(rule_semantics(item.rule_id, left, right),
                                   max_steps)
            if item.kind == ARULE:
                return beta_reduce(App(item.source_lf, run(item.children[0])),
                                   max_steps)
            return item.source_lf
        return run(self._root)

    def sort_key(self) -> tuple:
        return str(self.category), repr(self._root.structure())

    def __str__(self):
        return f"{self.category} : {self.lf}"


def singleton_texts(category: Category) -> set:
    if isinstance(category, Singleton):
        return {category.text}
    if isinstance(category, Complex):
        return singleton_texts(category.result) | singleton_texts(
            category.argument)
    return set()


class ChartParser:
    """Analyses expressions with the elements of one sourced grammar."""

    def __init__(self, grammar: SourcedGrammar,
                 config: ProcessorConfig = None):
        """Constructor method

        Parameters
        ----------
        grammar : SourcedGrammar
            The keyed grammar to analyse with
        config : ProcessorConfig [optional, default=None]
            Switches and limits; the defaults if not given

        Raises
        ------
        NoGrammarLoaded
            If `grammar` is None
        """
        if grammar is None:
            raise NoGrammarLoaded("No grammar is loaded")
        self._grammar = grammar
        self._config = config if config is not None else ProcessorConfig()
        self._arules = grammar.get_arules()
        self._lexicon = {}
        self._singletons = set()
        for entry in grammar.get_entries():
            self._lexicon.setdefault(entry.phon, []).append(entry)
            self._singletons |= singleton_texts(entry.category)
        for rule in self._arules:
            self._singletons |= singleton_texts(rule.lhs_cat)
            self._singletons |= singleton_texts(rule.rhs_cat)
        self._item_count = 0

    def get_grammar(self) -> SourcedGrammar:
        return self._grammar

    def get_config(self) -> ProcessorConfig:
        return self._config

    def _count(self, n: int = 1):
        self._item_count += n
        if self._item_count > self._config.max_items:
            raise ChartOverflow(f"Chart exceeded {self._config.max_items} "
                                f"items")

    def lexical_injections(self, items: list[SurfaceItem]) -> list[ChartItem]:
        """The leaves of the chart: one per matching entry, a singleton leaf
        where an item's text is a singleton of the grammar and, with oov
        on, the two dummies for an item nothing matched.

        Parameters
        ----------
        items : list[SurfaceItem]
            The tokenized input

        Returns
        -------
        list[ChartItem]
            Leaves in input order
        """
        leaves = []
        for i, item in enumerate(items):
            span = (i, i + 1)
            found = [ChartItem(entry.category, entry.lf, span, LEX,
                               key=entry.key, label=item.text,
                               source_lf=entry.lf)
                     for entry in self._lexicon.get(item.words, [])]
            if item.text in self._singletons:
                lf = Const(item.text.replace(" ", "_"), string=True)
                found.append(ChartItem(Singleton(item.text), lf, span,
                                       SINGLETON, label=item.text,
                                       source_lf=lf))
            if not found and self._config.oov:
                found = [ChartItem(category, IDENTITY, span, OOV,
                                   label=item.text, source_lf=IDENTITY)
                         for category in OOV_CATEGORIES]
            leaves.extend(found)
        return leaves

    def apply_arules(self, item: ChartItem) -> list[ChartItem]:
        """Closes an item under the asymmetric rules, taking the rules in
        grammar order. A rule fires at most once along a chain of rule
        steps; its right-hand lf is applied to the item's lf.

        Returns
        -------
        list[ChartItem]
            The new items, not including `item`
        """
        new_items = []
        agenda = [item]
        while agenda:
            current = agenda.pop(0)
            for rule in self._arules:
                if rule.key in current.applied_rules:
                    continue
                lhs, rhs = rename_apart_all(
                    [rule.lhs_cat, rule.rhs_cat],
                    category_variables(current.category))
                subst = unify_cat(lhs, current.category)
                if subst is None:
                    continue
                lf = beta_reduce(App(rule.rhs_lf, current.lf),
                                 self._config.max_reduction_steps)
                derived = ChartItem(subst.apply(rhs), lf, current.span,
                                    ARULE, key=rule.key,
                                    children=(current,),
                                    applied_rules=(current.applied_rules
                                                   | {rule.key}),
                                    label=rule.label, source_lf=rule.rhs_lf)
                self._count()
                new_items.append(derived)
                agenda.append(derived)
        return new_items

    def _closed(self, item: ChartItem) -> list[ChartItem]:
        return [item] + self.apply_arules(item)

    def chart(self, items: list[SurfaceItem]) -> dict:
        """Fills the chart bottom-up.

        Returns
        -------
        dict
            Maps each span `(i, j)` to the items over it

        Raises
        ------
        ChartOverflow
            If more items are built than the configured ceiling
        """
        self._item_count = 0
        n = len(items)
        cells = {(i, j): [] for i in range(n) for j in range(i + 1, n + 1)}
        for leaf in self.lexical_injections(items):
            self._count()
            cells[leaf.span].extend(self._closed(leaf))
        for length in range(2, n + 1):
            for i in range(n - length + 1):
                j = i + length
                cell = cells[(i, j)]
                for k in range(i + 1, j):
                    for left in cells[(i, k)]:
                        for right in cells[(k, j)]:
                            cell.extend(self._combine(left, right, (i, j)))
        return cells

    def _combine(self, left: ChartItem, right: ChartItem, span: tuple):
        produced = []
        for rule_id, category, lf in combine(left, right, self._config):
            if not nf_admissible(rule_id, left, right, self._config.nfparse):
                continue
            self._count()
            produced.extend(self._closed(ChartItem(
                category, lf, span, COMBINE, rule_id=rule_id,
                children=(left, right))))
        return produced

    def analyze(self, expression) -> list[Derivation]:
        """Analyses an expression.

        Parameters
        ----------
        expression : str or list[SurfaceItem]
            The input as typed, or already tokenized

        Returns
        -------
        list[Derivation]
            Complete analyses, ordered by root category print, then by
            derivation structure
        """
        items = (tokenize(expression) if isinstance(expression, str)
                 else list(expression))
        if not items:
            return []
        cells = self.chart(items)
        roots = cells[(0, len(items))]
        logger.debug("%d chart items, %d solutions", self._item_count,
                     len(roots))
        return sorted((Derivation(root) for root in roots),
                      key=Derivation.sort_key)


def analyze(expression, grammar: SourcedGrammar,
            config: ProcessorConfig = None) -> list[Derivation]:
    """Analyses `expression` in `grammar`; see :meth:`ChartParser.analyze`.
    """
    return ChartParser(grammar, config).analyze(expression)


def filter_solutions(derivations: list[Derivation],
                     basic_cats: list[str]) -> list[Derivation]:
    """Keeps the derivations whose root is a basic category named in
    `basic_cats`."""
    wanted = {name.lower() for name in basic_cats}
    return [d for d in derivations
            if isinstance(d.category, Basic) and d.category.name in wanted]
