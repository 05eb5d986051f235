#
# Readers for the category and lambda-term notations, built on lark
#

import os

from lark import Lark, Transformer
from lark.exceptions import LarkError

from .category import (Basic, Complex, Meta, SlashSpec, FeatureBundle,
                       normalize_singleton, DOT, MODALITIES)
from .lambda_term import Var, Const, Abs, App, abstract
from .errors import BenchError


class NotationError(BenchError, ValueError):
    pass


def read_grammar(name: str) -> str:
    """Reads one of the bundled `.lark` grammars."""
    grammar_dir = os.path.join(os.path.dirname(os.path.realpath(__file__)),
                               "grammars")
    with open(os.path.join(grammar_dir, name), "r",
              encoding="utf-8") as grammar_file:
        return grammar_file.read()


class CategoryTransformer(Transformer):
    """Builds :class:`Category` values; identifiers are lower-cased and
    meta variables upper-cased."""

    def start(self, items):
        return items[0]

    def complex(self, items):
        result, slash, argument = items
        text = str(slash)
        modality = text[-1] if text[-1] in MODALITIES else DOT
        double = len(text) > 1 and text[1] == text[0]
        return Complex(result, SlashSpec(text[0], double, modality), argument)

    def basic(self, items):
        name = str(items[0]).lower()
        features = items[1] if len(items) > 1 else FeatureBundle()
        return Basic(name, features)

    def features(self, items):
        return FeatureBundle(items)

    def feature(self, items):
        return str(items[0]).lower(), str(items[1]).lower()

    def meta(self, items):
        return Meta(str(items[0]).upper())

    def singleton(self, items):
        return normalize_singleton(str(items[0]))


class LambdaTransformer(Transformer):
    """Builds :class:`LambdaTerm` values. Every name comes out as a
    constant; :func:`bind_variables` turns bound ones into variables."""

    def start(self, items):
        return items[0]

    def lam(self, items):
        return abstract(items[:-1], items[-1])

    def binder(self, items):
        return str(items[0]).lower()

    def apply(self, items):
        return App(items[0], items[1])

    def name(self, items):
        return Const(str(items[0]).lower())

    def bang(self, items):
        return Const(str(items[0])[1:], string=True)


def bind_variables(term, bound=frozenset()):
    """Resolves names: a name under a binder of the same name is a
    variable, any other name is a constant."""
    if isinstance(term, Const):
        if not term.string and term.name in bound:
            return Var(term.name)
        return term
    if isinstance(term, Abs):
        return Abs(term.binder, bind_variables(term.body,
                                               bound | {term.binder}))
    if isinstance(term, App):
        return App(bind_variables(term.fun, bound),
                   bind_variables(term.arg, bound))
    return term


_category_parser = Lark(read_grammar("category.lark"), parser="lalr",
                        transformer=CategoryTransformer())
_lambda_parser = Lark(read_grammar("lambda_term.lark"), parser="lalr",
                      transformer=LambdaTransformer())


def check_parentheses(text: str) -> str:
    """Returns a description of the first parenthesis mismatch in `text`
    (quoted regions ignored), or an empty string."""
    depth = 0
    quote = None
    for i, char in enumerate(text):
        if quote:
            if char == quote:
                quote = None
        elif char in "'\"":
            quote = char
        elif char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                return f"unmatched ')' at column {i + 1}"
    if depth > 0:
        return f"{depth} unclosed '('"
    return ""


def parse_category(text: str):
    """Reads an s-command such as `(s\\^np[agr=3s])/^np`.

    Parameters
    ----------
    text : str
        The category in grammar notation

    Returns
    -------
    Category
        The category

    Raises
    ------
    NotationError
        If the text is not a well-formed category
    """
    mismatch = check_parentheses(text)
    if mismatch:
        raise NotationError(f"parenthesis mismatch in category: {mismatch}")
    try:
        return _category_parser.parse(text)
    except (LarkError, ValueError) as error:
        raise NotationError(f"malformed category {text.strip()!r}: "
                            f"{_first_line(error)}") from error


def parse_term(text: str):
    """Reads an l-command such as `\\x\\y.like x y`.

    Raises
    ------
    NotationError
        If the text is not a well-formed lambda term
    """
    mismatch = check_parentheses(text)
    if mismatch:
        raise NotationError(f"parenthesis mismatch in lambda term: "
                            f"{mismatch}")
    try:
        return bind_variables(_lambda_parser.parse(text))
    except (LarkError, ValueError) as error:
        raise NotationError(f"malformed lambda term {text.strip()!r}: "
                            f"{_first_line(error)}") from error


def _first_line(error: Exception) -> str:
    lines = str(error).strip().splitlines()
    return lines[0] if lines else type(error).__name__
