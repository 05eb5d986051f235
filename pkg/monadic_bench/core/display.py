#
# Text renderings of analyses, rankings and grammar reports
#

from collections import defaultdict

from .category import basic_categories, skeleton
from .elements import Entry, AsymRule
from .grammar_io import element_line
from .chart_parser import LEX, ARULE, COMBINE, OOV, SINGLETON
from .errors import NoGrammarLoaded


def _step_name(item) -> str:
    if item.kind == COMBINE:
        return item.rule_id
    if item.kind == LEX:
        return f"lex {item.label} <{item.key}>"
    if item.kind == ARULE:
        return f"{item.label} <{item.key}>"
    if item.kind == OOV:
        return f"oov {item.label}"
    if item.kind == SINGLETON:
        return f"singleton |{item.label}|"
    return item.kind


def render_derivation(derivation, lambda_display: bool = True) -> str:
    """An indented tree, root first. Every line shows the span, category
    and step; lfs of inner steps only with `lambda_display`, the final lf
    always."""
    lines = []

    def visit(item, depth):
        start, end = item.span
        text = f"{'  ' * depth}[{start}-{end}] {item.category}"
        if lambda_display or depth == 0:
            text += f" : {item.lf}"
        lines.append(f"{text}  ({_step_name(item)})")
        for child in item.children:
            visit(child, depth + 1)
    visit(derivation.get_root(), 0)
    return "\n".join(lines)


def render_summary(derivations) -> str:
    if not derivations:
        return "no solutions"
    lines = [f"{len(derivations)} solution(s)"]
    lines += [f"{i}. {d.category} : {d.lf}"
              for i, d in enumerate(derivations, start=1)]
    return "\n".join(lines)


def render_solutions(derivations, numbers=None,
                     lambda_display: bool = True) -> str:
    """Full displays of the stored analyses, all of them or those numbered
    in `numbers` (from 1)."""
    if not derivations:
        return "no solutions"
    if not numbers:
        numbers = range(1, len(derivations) + 1)
    blocks = []
    for number in numbers:
        if not 1 <= number <= len(derivations):
            blocks.append(f"no solution {number}")
            continue
        derivation = derivations[number - 1]
        blocks.append(f"solution {number}: {derivation}\n"
                      + render_derivation(derivation, lambda_display))
    return "\n\n".join(blocks)


def render_ranked(ranked, text: str, bare: bool = False,
                  lambda_display: bool = True) -> str:
    """Ranked lfs with probabilities and their best derivation; `bare`
    gives only `[string likeliest-lf]`."""
    if bare:
        return f"[{text} {ranked[0].lf}]"
    blocks = []
    for i, solution in enumerate(ranked, start=1):
        blocks.append(f"{i}. p={solution.probability:.6f} {solution.lf} "
                      f"({solution.count} derivation(s))\n"
                      + render_derivation(solution.derivation,
                                          lambda_display))
    return "\n\n".join(blocks)


def _categories_with_bearers(grammar):
    for element in grammar:
        if isinstance(element, Entry):
            bearer = " ".join(element.phon)
            if element.pos:
                bearer += f" | {element.pos}"
            yield element.category, bearer
        elif isinstance(element, AsymRule):
            yield element.rhs_cat, element.label


def report_skeleton(grammar) -> str:
    """The distinct categories of a grammar grouped under their featureless
    skeleton, each with the elements bearing it.

    Raises
    ------
    NoGrammarLoaded
        If `grammar` is None
    """
    if grammar is None:
        raise NoGrammarLoaded("No grammar is loaded")
    groups = defaultdict(lambda: defaultdict(list))
    for category, bearer in _categories_with_bearers(grammar):
        groups[str(skeleton(category))][category].append(bearer)
    distinct = sum(len(cats) for cats in groups.values())
    lines = [f"{distinct} distinct categories, {len(groups)} skeletons"]
    for shape in sorted(groups):
        lines.append(f"{shape} ({len(groups[shape])})")
        for category in sorted(groups[shape], key=str):
            lines.append(f"    {category} : "
                         f"{', '.join(groups[shape][category])}")
    return "\n".join(lines)


def report_inventory(grammar) -> str:
    """The basic categories of a grammar with their features and the values
    attested for each."""
    if grammar is None:
        raise NoGrammarLoaded("No grammar is loaded")
    inventory = defaultdict(lambda: defaultdict(set))
    for element in grammar:
        categories = ([element.category] if isinstance(element, Entry)
                      else [element.lhs_cat, element.rhs_cat])
        for category in categories:
            for basic in basic_categories(category):
                features = inventory[basic.name]
                for name, value in basic.features:
                    features[name].add(value)
    lines = [f"{len(inventory)} basic categories"]
    for name in sorted(inventory):
        lines.append(name)
        for feature in sorted(inventory[name]):
            values = ", ".join(sorted(inventory[name][feature]))
            lines.append(f"    {feature}: {values}")
    return "\n".join(lines)


def list_by_pos(grammar, pos_list: list[str]) -> str:
    if grammar is None:
        raise NoGrammarLoaded("No grammar is loaded")
    wanted = {pos.lower() for pos in pos_list}
    lines = [element_line(e) for e in grammar.get_entries()
             if e.pos in wanted]
    return "\n".join(lines) if lines else "no elements"
