#
# Reading and writing grammar text, sourced grammars, re-text, supervision,
# compiled supervision and experiment files
#

import logging
import os
import re
from dataclasses import dataclass
from typing import Optional, Union

import pandas as pd

from .category import arity, result_has_singleton
from .lambda_term import LambdaTerm, is_closed
from .elements import (Entry, AsymRule, SymRule, SymSide, Grammar,
                       SourcedGrammar, corresponds)
from .notation import parse_category, parse_term, NotationError
from .surface import tokenize, surface_text
from .processor_config import PROCESSOR_FUNCTIONS
from .workspace import atomic_write
from .errors import (LineError, DuplicateUserKey, VersionMismatch,
                     UnknownPreFunction, UnbalancedMweBars)

logger = logging.getLogger(__name__)

SRC_HEADER = "# monadic-bench src v1"
SUP_HEADER = "# monadic-bench sup v1"
SRC_COLUMNS = ["kind", "key", "weight", "name", "phon", "pos", "cat", "lf",
               "rhs_cat", "rhs_lf"]
SUP_COLUMNS = ["surface", "lf"]

KEY_WEIGHT = re.compile(r"<\s*(\d+)\s*,\s*([-+]?(?:\d+\.?\d*|\.\d+)"
                        r"(?:[eE][-+]?\d+)?)\s*>\s*$")
IDENTIFIER = re.compile(r"^[\w~]([\w~\-]*[\w~])?$")
RULE_HEAD = re.compile(r"^#([\w~][\w~\-]*)\s*(.*)$", re.S)


def strip_comment(line: str) -> str:
    """Cuts a line at its comment character `%`. Phonological material in
    front of `::` and quoted singleton text are never cut."""
    if line.lstrip().startswith("%"):
        return ""
    head_end = -1
    if not line.lstrip().startswith("#"):
        head_end = line.find("::")
    quote = None
    for i, char in enumerate(line):
        if i <= head_end:
            continue
        if quote:
            if char == quote:
                quote = None
        elif char in "'\"":
            quote = char
        elif char == "%":
            return line[:i]
    return line


def split_outside_quotes(text: str, separator: str):
    """Splits `text` at the first `separator` outside quotes, or returns
    None if there is none."""
    quote = None
    for i, char in enumerate(text):
        if quote:
            if char == quote:
                quote = None
        elif char in "'\"":
            quote = char
        elif text.startswith(separator, i):
            return text[:i], text[i + len(separator):]
    return None


def _category_and_lf(text: str, line_no: int, what: str):
    parts = split_outside_quotes(text, ":")
    if parts is None:
        raise LineError(line_no, f"{what} needs 'category : lf'")
    try:
        category = parse_category(parts[0])
        lf = parse_term(parts[1])
    except NotationError as error:
        raise LineError(line_no, str(error)) from None
    if result_has_singleton(category):
        raise LineError(line_no, f"singleton used as a result in {category}; "
                        f"singletons are domains only")
    return category, lf


def _check_correspondence(category, lf, line_no: int):
    if not corresponds(category, lf):
        raise LineError(line_no, f"lf {lf} does not keep up with the "
                        f"{arity(category)} argument(s) of {category}")


def parse_element(line: str, line_no: int = 0):
    """Parses one line of grammar text.

    Parameters
    ----------
    line : str
        The line, possibly with a comment and a `<key, weight>` suffix
    line_no : int [optional, default=0]
        Line number used in diagnostics

    Returns
    -------
    Entry, AsymRule, SymRule or None
        The element, or None for an empty or comment-only line

    Raises
    ------
    LineError
        If the line is not a well-formed element
    """
    text = strip_comment(line).strip()
    if not text:
        return None
    key, weight = None, 1.0
    match = KEY_WEIGHT.search(text)
    if match:
        key, weight = int(match.group(1)), float(match.group(2))
        text = text[:match.start()].rstrip()
        if key < 1:
            raise LineError(line_no, "keys must be positive integers")
    if text.startswith("#"):
        return _parse_rule(text, line_no, key, weight)
    return _parse_entry(text, line_no, key, weight)


def _parse_entry(text: str, line_no: int, key, weight) -> Entry:
    if "::" not in text:
        raise LineError(line_no, "an entry needs 'phon | pos :: category : "
                        "lf'")
    head, body = text.split("::", 1)
    pos = None
    if "|" in head:
        head, pos = head.split("|", 1)
        pos = pos.strip().lower()
        if not IDENTIFIER.match(pos):
            raise LineError(line_no, f"bad part of speech {pos!r}")
    phon = tuple(head.split())
    if not phon:
        raise LineError(line_no, "an entry needs phonological material")
    category, lf = _category_and_lf(body, line_no, "an entry")
    _check_correspondence(category, lf, line_no)
    return Entry(phon, pos, category, lf, key, weight)


def _parse_rule(text: str, line_no: int, key, weight):
    match = RULE_HEAD.match(text)
    if not match:
        raise LineError(line_no, "a rule needs a name right after '#'")
    name, body = match.group(1).lower(), match.group(2)
    if "<-->" in body:
        if key is not None:
            raise LineError(line_no, "symmetric rules take no key; their "
                            "compiled entries are keyed")
        left, right = body.split("<-->", 1)
        return SymRule(name, _symmetric_side(left, line_no),
                       _symmetric_side(right, line_no))
    if "-->" in body:
        lhs, rhs = body.split("-->", 1)
        lhs_cat, lhs_lf = _category_and_lf(lhs, line_no, "a rule's left side")
        rhs_cat, rhs_lf = _category_and_lf(rhs, line_no,
                                           "a rule's right side")
        return AsymRule(name, lhs_cat, lhs_lf, rhs_cat, rhs_lf, key, weight)
    raise LineError(line_no, f"rule #{name} needs '-->' or '<-->'")


def _symmetric_side(text: str, line_no: int) -> SymSide:
    if "," not in text:
        raise LineError(line_no, "each side of a symmetric rule needs "
                        "'phon, category : lf'")
    phon, rest = text.split(",", 1)
    phon = tuple(phon.split())
    if not phon:
        raise LineError(line_no, "both sides of a symmetric rule need "
                        "phonological material")
    category, lf = _category_and_lf(rest, line_no, "a symmetric rule side")
    _check_correspondence(category, lf, line_no)
    return SymSide(phon, category, lf)


def parse_grammar_text(text: str, name: str = "grammar"):
    """Parses grammar text, one element per line. Bad lines do not stop the
    parse; each one yields a diagnostic.

    Parameters
    ----------
    text : str
        The grammar text
    name : str [optional, default="grammar"]
        Name given to the grammar

    Returns
    -------
    tuple[Grammar, list[LineError]]
        The well-formed elements in textual order, and the diagnostics
    """
    elements, errors = [], []
    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            element = parse_element(line, line_no)
        except LineError as error:
            errors.append(error)
            continue
        if element is not None:
            elements.append(element)
    return Grammar(elements, name), errors


def grammar_name(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def load_grammar(path: str):
    """Reads and parses a grammar text file; see :func:`parse_grammar_text`.
    """
    with open(path, "r", encoding="utf-8") as grammar_file:
        return parse_grammar_text(grammar_file.read(), grammar_name(path))


def source_grammar(grammar: Grammar) -> SourcedGrammar:
    """Compiles symmetric rules into pairs of entries and keys every element.
    User keys are kept; the others are numbered upward from the largest
    user key, in textual order.

    Raises
    ------
    DuplicateUserKey
        If two elements carry the same user key
    """
    elements = []
    for element in grammar:
        if isinstance(element, SymRule):
            elements.extend(element.compile())
        else:
            elements.append(element)
    user_keys = set()
    for element in elements:
        if element.key is None:
            continue
        if element.key in user_keys:
            raise DuplicateUserKey(f"Key {element.key} is assigned twice "
                                   f"(again on {element.label})")
        user_keys.add(element.key)
    next_key = max(user_keys, default=0) + 1
    keyed = []
    for element in elements:
        if element.key is None:
            element = element.with_key(next_key)
            next_key += 1
        keyed.append(element)
    sourced = SourcedGrammar(keyed, grammar.get_name())
    logger.info("sourced grammar %s: %d entries, %d rules",
                sourced.get_name(), len(sourced.get_entries()),
                len(sourced.get_arules()))
    return sourced


def element_line(element, with_key: bool = True) -> str:
    """The grammar-text line of an element, with its `<key, weight>` suffix
    if it has a key and `with_key` is set."""
    suffix = ""
    if with_key and getattr(element, "key", None) is not None:
        suffix = f" <{element.key}, {float(element.weight)!r}>"
    if isinstance(element, Entry):
        head = " ".join(element.phon)
        if element.pos:
            head += f" | {element.pos}"
        return f"{head} :: {element.category} : {element.lf}{suffix}"
    if isinstance(element, AsymRule):
        return (f"#{element.name} {element.lhs_cat} : {element.lhs_lf} --> "
                f"{element.rhs_cat} : {element.rhs_lf}{suffix}")
    sides = [f"{' '.join(side.phon)}, {side.category} : {side.lf}"
             for side in (element.left, element.right)]
    return f"#{element.name} {sides[0]} <--> {sides[1]}"


def regenerate_text(grammar: Grammar) -> str:
    """Re-text of a (sourced) grammar: one line per element, no comments."""
    return "".join(element_line(element) + "\n" for element in grammar)


def write_arules_text(rules, path: str):
    """Writes asymmetric rules as grammar text lines without keys."""
    atomic_write(path, "".join(element_line(rule, with_key=False) + "\n"
                               for rule in rules))


def element_to_dict(element) -> dict:
    """The intermediate representation of an element, as shown by the `i`
    and `-` commands."""
    if isinstance(element, Entry):
        return {"kind": element.kind, "key": element.key,
                "weight": element.weight, "phon": list(element.phon),
                "pos": element.pos, "category": str(element.category),
                "arity": arity(element.category), "lf": str(element.lf)}
    if isinstance(element, AsymRule):
        return {"kind": element.kind, "key": element.key,
                "weight": element.weight, "name": element.name,
                "lhs": {"category": str(element.lhs_cat),
                        "lf": str(element.lhs_lf)},
                "rhs": {"category": str(element.rhs_cat),
                        "lf": str(element.rhs_lf)}}
    return {"kind": element.kind, "name": element.name,
            "sides": [{"phon": list(side.phon),
                       "category": str(side.category), "lf": str(side.lf)}
                      for side in (element.left, element.right)]}


def _src_record(element) -> dict:
    record = dict.fromkeys(SRC_COLUMNS, "")
    record.update(kind=element.kind, key=str(element.key),
                  weight=repr(float(element.weight)))
    if isinstance(element, Entry):
        record.update(phon=" ".join(element.phon), pos=element.pos or "",
                      cat=str(element.category), lf=str(element.lf))
    else:
        record.update(name=element.name, cat=str(element.lhs_cat),
                      lf=str(element.lhs_lf), rhs_cat=str(element.rhs_cat),
                      rhs_lf=str(element.rhs_lf))
    return record


def _read_table(path: str, header: str) -> pd.DataFrame:
    with open(path, "r", encoding="utf-8") as table_file:
        first = table_file.readline().strip()
        if first != header:
            raise VersionMismatch(f"{path} starts with {first!r}, expected "
                                  f"{header!r}")
        return pd.read_csv(table_file, sep="\t", dtype=str,
                           keep_default_na=False)


def _write_table(path: str, header: str, records: list, columns: list):
    table = pd.DataFrame(records, columns=columns)
    atomic_write(path, header + "\n" + table.to_csv(sep="\t", index=False))


def write_src(grammar: SourcedGrammar, path: str):
    """Writes a sourced grammar to `path` (versioned, tab separated)."""
    _write_table(path, SRC_HEADER, [_src_record(e) for e in grammar],
                 SRC_COLUMNS)


def read_src(path: str) -> SourcedGrammar:
    """Reads a file written by :func:`write_src`.

    Raises
    ------
    VersionMismatch
        If the file does not carry the current `.src` header
    LineError
        If a record cannot be read back
    """
    table = _read_table(path, SRC_HEADER)
    elements = []
    for row_no, row in enumerate(table.itertuples(index=False), start=2):
        try:
            key, weight = int(row.key), float(row.weight)
            if row.kind == "entry":
                elements.append(Entry(tuple(row.phon.split()),
                                      row.pos or None,
                                      parse_category(row.cat),
                                      parse_term(row.lf), key, weight))
            elif row.kind == "arule":
                elements.append(AsymRule(row.name, parse_category(row.cat),
                                         parse_term(row.lf),
                                         parse_category(row.rhs_cat),
                                         parse_term(row.rhs_lf), key,
                                         weight))
            else:
                raise ValueError(f"unknown record kind {row.kind!r}")
        except ValueError as error:
            raise LineError(row_no, str(error)) from None
    name = grammar_name(path)
    return SourcedGrammar(elements, name)


@dataclass(frozen=True)
class SupervisionPair:
    """A surface expression and its gold predicate-argument structure."""
    surface: tuple
    gold_lf: LambdaTerm

    def __post_init__(self):
        if not self.surface:
            raise ValueError("A supervision pair needs a surface expression")
        if not is_closed(self.gold_lf):
            raise ValueError(f"Gold lf {self.gold_lf} has free variables")
        object.__setattr__(self, "surface", tuple(self.surface))

    @property
    def text(self) -> str:
        return surface_text(self.surface)


def parse_supervision_line(line: str, line_no: int = 0):
    """Parses `surface : lf`. Returns None for empty and comment lines."""
    if not line.strip() or line.lstrip().startswith("%"):
        return None
    parts = line.split(":", 1)
    if len(parts) < 2:
        raise LineError(line_no, "a supervision line needs 'surface : lf'")
    lf_text = parts[1].split("%", 1)[0]
    try:
        surface = tokenize(parts[0])
        gold = parse_term(lf_text)
        return SupervisionPair(tuple(surface), gold)
    except (UnbalancedMweBars, ValueError) as error:
        raise LineError(line_no, str(error)) from None


def parse_supervision(text: str):
    """Parses supervision text; a repeated line is a separate pair.

    Returns
    -------
    tuple[list[SupervisionPair], list[LineError]]
        The pairs in file order, and the diagnostics
    """
    pairs, errors = [], []
    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            pair = parse_supervision_line(line, line_no)
        except LineError as error:
            errors.append(error)
            continue
        if pair is not None:
            pairs.append(pair)
    return pairs, errors


def write_sup(pairs, path: str):
    records = [{"surface": pair.text, "lf": str(pair.gold_lf)}
               for pair in pairs]
    _write_table(path, SUP_HEADER, records, SUP_COLUMNS)


def read_sup(path: str) -> list[SupervisionPair]:
    table = _read_table(path, SUP_HEADER)
    pairs = []
    for row_no, row in enumerate(table.itertuples(index=False), start=2):
        try:
            pairs.append(SupervisionPair(tuple(tokenize(row.surface)),
                                         parse_term(row.lf)))
        except ValueError as error:
            raise LineError(row_no, str(error)) from None
    return pairs


@dataclass(frozen=True)
class ExperimentSpec:
    """One line of an experiment file: memory hints, iterations (`xp` for
    an extrapolated run), learning rate and its rate, log prefix and an
    optional processor function to call before training."""
    mem_mb: int
    heap_mb: int
    iterations: Union[int, str]
    learning_rate: float
    learning_rate_rate: float
    log_prefix: str
    pre_function: Optional[str] = None

    def __post_init__(self):
        if self.mem_mb < 0 or self.heap_mb < 0:
            raise ValueError("Memory figures cannot be negative")
        if self.heap_mb > self.mem_mb:
            raise ValueError("heap_mb cannot be more than mem_mb")
        if self.iterations != "xp" and (not isinstance(self.iterations, int)
                                        or self.iterations < 1):
            raise ValueError("iterations must be 'xp' or a positive integer")
        if self.learning_rate < 0 or self.learning_rate_rate < 0:
            raise ValueError("Learning rates cannot be negative")
        if not IDENTIFIER.match(self.log_prefix):
            raise ValueError(f"Bad log prefix {self.log_prefix!r}")
        if (self.pre_function is not None
                and self.pre_function not in PROCESSOR_FUNCTIONS):
            raise UnknownPreFunction(f"Unknown processor function "
                                     f"{self.pre_function!r}")

    @property
    def extrapolate(self) -> bool:
        return self.iterations == "xp"

    def run_label(self) -> str:
        """`<prefix>-<lr>-<lrr>-<iterations>`, the stem of the run's files.
        """
        return (f"{self.log_prefix}-{self.learning_rate}-"
                f"{self.learning_rate_rate}-{self.iterations}")

    def to_line(self) -> str:
        fields = [self.mem_mb, self.heap_mb, self.iterations,
                  self.learning_rate, self.learning_rate_rate,
                  self.log_prefix]
        if self.pre_function:
            fields.append(self.pre_function)
        return " ".join(str(field) for field in fields)


def parse_experiment_line(line: str, line_no: int = 0) -> ExperimentSpec:
    """Parses `mem heap iterations lr lrr prefix [function]`.

    Raises
    ------
    LineError
        On a wrong number of fields or a field of the wrong type
    UnknownPreFunction
        If the seventh field is not a processor function
    """
    fields = line.split()
    if len(fields) not in (6, 7):
        raise LineError(line_no, f"expected 6 or 7 fields, got {len(fields)}")
    try:
        mem_mb, heap_mb = int(fields[0]), int(fields[1])
        iterations = "xp" if fields[2] == "xp" else int(fields[2])
        learning_rate = float(fields[3])
        learning_rate_rate = float(fields[4])
    except ValueError:
        raise LineError(line_no, "fields 1-2 must be integers, field 3 'xp' "
                        "or an integer, fields 4-5 numbers") from None
    if learning_rate <= 0:
        raise LineError(line_no, "the learning rate must be positive")
    pre_function = fields[6] if len(fields) == 7 else None
    if pre_function is not None and pre_function not in PROCESSOR_FUNCTIONS:
        raise UnknownPreFunction(f"line {line_no}: unknown processor "
                                 f"function {pre_function!r}")
    try:
        return ExperimentSpec(mem_mb, heap_mb, iterations, learning_rate,
                              learning_rate_rate, fields[5], pre_function)
    except UnknownPreFunction:
        raise
    except ValueError as error:
        raise LineError(line_no, str(error)) from None


def experiment_lines(text: str) -> list[tuple[int, str]]:
    """The numbered non-empty, non-comment lines of an experiment file."""
    return [(line_no, line.strip())
            for line_no, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("%")]


def parse_experiment_file(text: str) -> list[ExperimentSpec]:
    """Parses an experiment file, one spec per line."""
    return [parse_experiment_line(line, line_no)
            for line_no, line in experiment_lines(text)]
