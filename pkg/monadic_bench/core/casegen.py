#
# Generating case functions (type-raising rules) from the subcategorization
# of verb-like entries
#

import logging
import os

from .category import (Category, Basic, Complex, Singleton, Meta,
                       SlashSpec, FeatureBundle, FORWARD, BACKWARD,
                       is_variable, category_variables, spine)
from .lambda_term import Var, Const, Abs, App
from .elements import AsymRule, SourcedGrammar
from .unification import fresh_variable, rename_variables
from .grammar_io import write_arules_text
from .errors import EmptyPosList

logger = logging.getLogger(__name__)

CASE_LF = Abs("lf", Abs("p", App(Var("p"), Var("lf"))))
CASE_LHS_LF = Const("lf")
CASE_FILE_SUFFIX = ".sc.arules"


def _ordered_variables(category: Category) -> list[str]:
    if isinstance(category, Basic):
        return [value for _, value in category.features if is_variable(value)]
    if isinstance(category, Complex):
        return (_ordered_variables(category.result)
                + _ordered_variables(category.argument))
    if isinstance(category, Meta):
        return ["@" + category.var]
    return []


def rule_signature(lhs: Category, rhs: Category) -> tuple:
    """Prints of `lhs` and `rhs` with variables renamed by order of first
    occurrence; equal for rules that differ only in variable names."""
    renaming = {}
    for variable in _ordered_variables(lhs) + _ordered_variables(rhs):
        if variable not in renaming:
            prefix = "@V" if variable.startswith("@") else "?v"
            renaming[variable] = f"{prefix}{len(renaming) + 1}"
    return (str(rename_variables(lhs, renaming)),
            str(rename_variables(rhs, renaming)))


def _generalize(functor: Complex) -> Complex:
    argument = functor.argument
    if not isinstance(argument, Basic):
        return functor
    taken = category_variables(functor)
    pairs = []
    for name, value in argument.features:
        if not is_variable(value):
            value = "?x" if "?x" not in taken else fresh_variable("?x", taken)
            taken.add(value)
        pairs.append((name, value))
    return Complex(functor.result, functor.slash,
                   Basic(argument.name, FeatureBundle(pairs)))


def generate_case_functions(grammar, pos_list: list[str],
                            generalize: bool = False) -> list[AsymRule]:
    """Walks the curried category of every entry whose part of speech is in
    `pos_list`. A slot `R\\A` yields the rule `A --> R/(R\\A)`, a slot
    `R/A` the rule `A --> R\\(R/A)`, both with lf `\\lf\\p.p lf`.

    Parameters
    ----------
    grammar : Grammar
        The grammar to read entries from
    pos_list : list[str]
        Parts of speech of the verb-like entries
    generalize : bool [optional, default=False]
        Replace the constant feature values of each argument by variables

    Returns
    -------
    list[AsymRule]
        Unkeyed rules named `case-<pos>-<n>`, without duplicates up to
        variable renaming

    Raises
    ------
    EmptyPosList
        If `pos_list` is empty
    """
    if not pos_list:
        raise EmptyPosList("Case functions need at least one part of speech")
    wanted = [pos.lower() for pos in pos_list]
    rules, seen, counts = [], set(), {}
    for entry in grammar.get_entries():
        if entry.pos not in wanted or not isinstance(entry.category, Complex):
            continue
        for functor in spine(entry.category):
            if isinstance(functor.argument, (Singleton, Meta)):
                continue
            if functor.slash.double:
                logger.info("no case function for the double slash slot of "
                            "%s in %s", functor, entry.label)
                continue
            if generalize:
                functor = _generalize(functor)
            outer = SlashSpec(BACKWARD if functor.slash.forward else FORWARD)
            lhs = functor.argument
            rhs = Complex(functor.result, outer, functor)
            signature = rule_signature(lhs, rhs)
            if signature in seen:
                continue
            seen.add(signature)
            counts[entry.pos] = counts.get(entry.pos, 0) + 1
            rules.append(AsymRule(f"case-{entry.pos}-{counts[entry.pos]}",
                                  lhs, CASE_LHS_LF, rhs, CASE_LF))
    if not rules:
        logger.warning("no case functions for parts of speech %s",
                       ", ".join(wanted))
    return rules


def merge_case_functions(grammar: SourcedGrammar,
                         rules: list[AsymRule]) -> SourcedGrammar:
    """The grammar with `rules` appended under fresh keys. Only the
    in-memory grammar changes; no grammar file is touched."""
    next_key = grammar.next_key()
    keyed = [rule.with_key(next_key + i) for i, rule in enumerate(rules)]
    return SourcedGrammar(grammar.get_elements() + keyed, grammar.get_name())


def write_arules(rules: list[AsymRule], grammar_name: str,
                 directory: str = ".") -> str:
    """Saves `rules` as `<grammar_name>.sc.arules` in `directory`.

    Returns
    -------
    str
        The path written
    """
    path = os.path.join(directory, grammar_name + CASE_FILE_SUFFIX)
    write_arules_text(rules, path)
    return path
