#
# Normal-order beta reduction and alpha equivalence of lambda terms
#

import re

from .lambda_term import (LambdaTerm, Var, Const, Abs, App, free_variables,
                          names)
from .errors import ReductionDepthExceeded

DEFAULT_MAX_STEPS = 10000


def fresh_name(name: str, avoid: set) -> str:
    """Numbers `name` until it is not in `avoid`."""
    base = re.sub(r"\d+$", "", name) or name
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(term: LambdaTerm, name: str, value: LambdaTerm,
               value_free: set = None) -> LambdaTerm:
    """Capture-avoiding substitution of `value` for the free variable
    `name` in `term`. Binders that would capture a free variable of
    `value` are renamed with a numbered suffix."""
    if value_free is None:
        value_free = free_variables(value)
    if isinstance(term, Var):
        return value if term.name == name else term
    if isinstance(term, App):
        return App(substitute(term.fun, name, value, value_free),
                   substitute(term.arg, name, value, value_free))
    if isinstance(term, Abs):
        if term.binder == name:
            return term
        if term.binder in value_free and name in free_variables(term.body):
            fresh = fresh_name(term.binder,
                               names(term.body) | names(value) | {name})
            body = substitute(term.body, term.binder, Var(fresh))
            return Abs(fresh, substitute(body, name, value, value_free))
        return Abs(term.binder, substitute(term.body, name, value,
                                           value_free))
    return term


class _Budget:

    def __init__(self, max_steps: int):
        self._left = max_steps
        self._max_steps = max_steps

    def spend(self):
        self._left -= 1
        if self._left < 0:
            raise ReductionDepthExceeded(f"No normal form within "
                                         f"{self._max_steps} beta steps")


def _whnf(term: LambdaTerm, budget: _Budget) -> LambdaTerm:
    spine = []
    while True:
        while isinstance(term, App):
            spine.append(term.arg)
            term = term.fun
        if isinstance(term, Abs) and spine:
            budget.spend()
            term = substitute(term.body, term.binder, spine.pop())
            continue
        break
    while spine:
        term = App(term, spine.pop())
    return term


def _normalize(term: LambdaTerm, budget: _Budget) -> LambdaTerm:
    term = _whnf(term, budget)
    if isinstance(term, Abs):
        return Abs(term.binder, _normalize(term.body, budget))
    if isinstance(term, App):
        return App(_normalize(term.fun, budget),
                   _normalize(term.arg, budget))
    return term


def beta_reduce(term: LambdaTerm,
                max_steps: int = DEFAULT_MAX_STEPS) -> LambdaTerm:
    """Reduces `term` to beta-normal form, leftmost-outermost redex first.
    No eta conversion is done.

    Parameters
    ----------
    term : LambdaTerm
        The term to reduce
    max_steps : int [optional, default=10000]
        The most beta steps allowed

    Returns
    -------
    LambdaTerm
        The normal form

    Raises
    ------
    ReductionDepthExceeded
        If no normal form is reached within `max_steps` steps
    """
    return _normalize(term, _Budget(max_steps))


def canonical_term(term: LambdaTerm, bound: tuple = ()):
    """A hashable key equal for exactly the alpha-equivalent terms (bound
    variables are replaced by their de Bruijn index)."""
    if isinstance(term, Var):
        if term.name in bound:
            return ("b", bound.index(term.name))
        return ("v", term.name)
    if isinstance(term, Const):
        return ("c", term.name, term.string)
    if isinstance(term, Abs):
        return ("l", canonical_term(term.body, (term.binder,) + bound))
    return ("a", canonical_term(term.fun, bound),
            canonical_term(term.arg, bound))


def alpha_equiv(a: LambdaTerm, b: LambdaTerm) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return canonical_term(a) == canonical_term(b)


def compose(f: LambdaTerm, g: LambdaTerm) -> LambdaTerm:
    """`\\z.f (g z)` for a `z` fresh in both terms."""
    z = fresh_name("z", names(f) | names(g))
    return Abs(z, App(f, App(g, Var(z))))


def lift_application(f: LambdaTerm, a: LambdaTerm,
                     max_steps: int = DEFAULT_MAX_STEPS) -> LambdaTerm:
    """Replays the application `f a` as a composition: the functor becomes
    `\\phi.f phi`, the argument `\\psi.psi a`, and their composition is
    applied to the identity. Reduces to the same normal form as `f a`."""
    used = names(f) | names(a)
    phi = fresh_name("phi", used)
    psi = fresh_name("psi", used | {phi})
    x = fresh_name("x", used | {phi, psi})
    lifted_f = Abs(phi, App(f, Var(phi)))
    lifted_a = Abs(psi, App(Var(psi), a))
    return beta_reduce(App(compose(lifted_f, lifted_a), Abs(x, Var(x))),
                       max_steps)
