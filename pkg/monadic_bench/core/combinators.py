#
# The combination rules of the monad: application and first-order
# composition, gated by slash modalities
#

from .category import (Category, Complex, contains_meta, category_variables,
                       DOT, DIAMOND, CROSS)
from .lambda_term import LambdaTerm, App
from .evaluator import beta_reduce, compose
from .unification import unify_cat, rename_apart

APPLICATION = ("A", "T")
HARMONIC = ("FB", "BB")
CROSSING = ("FBx", "BBx")
RULES = APPLICATION + HARMONIC + CROSSING
FORWARD_RULES = ("A", "FB", "FBx")
BACKWARD_RULES = ("T", "BB", "BBx")


def licensed(modality: str, rule_id: str) -> bool:
    """Whether a slash of `modality` lets its functor drive `rule_id`.
    Application is never blocked."""
    if rule_id in APPLICATION or modality == DOT:
        return True
    if modality == DIAMOND:
        return rule_id in HARMONIC
    if modality == CROSS:
        return rule_id in CROSSING
    return False


def rule_semantics(rule_id: str, left_lf: LambdaTerm,
                   right_lf: LambdaTerm) -> LambdaTerm:
    """The (unreduced) lf a rule builds from the lfs of its inputs."""
    if rule_id == "A":
        return App(left_lf, right_lf)
    if rule_id == "T":
        return App(right_lf, left_lf)
    if rule_id in FORWARD_RULES:
        return compose(left_lf, right_lf)
    return compose(right_lf, left_lf)


def _can_compose(primary: Complex, secondary: Complex, rule_id: str) -> bool:
    if primary.slash.double or secondary.slash.double:
        return False
    return (licensed(primary.slash.modality, rule_id)
            and licensed(secondary.slash.modality, rule_id))


def combine_categories(left: Category, right: Category,
                       montague: bool = False) -> list:
    """Every rule that combines `left` with `right`, as
    `(rule_id, category)` pairs. The right category is renamed apart from
    the left one first.

    Parameters
    ----------
    left : Category
        The category of the left constituent
    right : Category
        The category of the right constituent
    montague : bool [optional, default=False]
        Application only

    Returns
    -------
    list[tuple[str, Category]]
        The licensed combinations
    """
    right = rename_apart(right, category_variables(left))
    results = []
    if isinstance(left, Complex) and left.slash.forward:
        subst = unify_cat(left.argument, right)
        if subst is not None:
            results.append(("A", subst.apply(left.result)))
    if isinstance(right, Complex) and not right.slash.forward:
        subst = unify_cat(right.argument, left)
        if subst is not None:
            results.append(("T", subst.apply(right.result)))
    if montague or contains_meta(left) or contains_meta(right):
        return results
    if not (isinstance(left, Complex) and isinstance(right, Complex)):
        return results
    if left.slash.forward:
        rule_id = "FB" if right.slash.forward else "FBx"
        if _can_compose(left, right, rule_id):
            subst = unify_cat(left.argument, right.result)
            if subst is not None:
                results.append((rule_id, Complex(
                    subst.apply(left.result), right.slash,
                    subst.apply(right.argument))))
    if not right.slash.forward:
        rule_id = "BB" if not left.slash.forward else "BBx"
        if _can_compose(right, left, rule_id):
            subst = unify_cat(right.argument, left.result)
            if subst is not None:
                results.append((rule_id, Complex(
                    subst.apply(right.result), left.slash,
                    subst.apply(left.argument))))
    return results


def combine(left, right, config) -> list:
    """Combines two adjacent constituents (anything with `category` and
    `lf`, such as chart items).

    Parameters
    ----------
    left : ChartItem
        The left constituent
    right : ChartItem
        The right constituent
    config : ProcessorConfig
        Supplies the monad mode and the reduction budget

    Returns
    -------
    list[tuple[str, Category, LambdaTerm]]
        Rule, result category and beta-normal lf of every combination
    """
    return [(rule_id, category,
             beta_reduce(rule_semantics(rule_id, left.lf, right.lf),
                         config.max_reduction_steps))
            for rule_id, category in combine_categories(
                left.category, right.category, config.montague)]


def nf_admissible(rule_id: str, left, right, nfparse: bool = True) -> bool:
    """Normal-form check: the primary functor of a forward rule may not come
    from forward composition, that of a backward rule not from backward
    composition."""
    if not nfparse:
        return True
    if rule_id in FORWARD_RULES:
        return left.rule_id not in ("FB", "FBx")
    return right.rule_id not in ("BB", "BBx")
