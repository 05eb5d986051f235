#
# Term unification of categories: feature variables and meta variables
#

from __future__ import annotations

import re
from typing import Optional

from .category import (Category, Basic, Complex, Singleton, Meta,
                       FeatureBundle, is_variable, category_variables)


class Substitution:
    """Bindings of feature variables (`?x` to a value) and meta variables
    (`@X` to a category). Bindings are kept triangular; :meth:`resolve` and
    :meth:`apply` follow chains to the end.
    """

    def __init__(self, bindings: dict = None):
        self._bindings = dict(bindings or {})

    def get_bindings(self) -> dict:
        return dict(self._bindings)

    def copy(self) -> "Substitution":
        return Substitution(self._bindings)

    def bind(self, variable: str, value):
        if variable in self._bindings:
            raise ValueError(f"{variable} is already bound")
        self._bindings[variable] = value

    def resolve(self, value: str) -> str:
        """The value a feature value stands for after all bindings."""
        while is_variable(value) and value in self._bindings:
            value = self._bindings[value]
        return value

    def resolve_meta(self, category: Category) -> Category:
        while isinstance(category, Meta):
            bound = self._bindings.get("@" + category.var)
            if bound is None:
                break
            category = bound
        return category

    def apply(self, category: Category) -> Category:
        """Instantiates every bound variable of `category`."""
        if isinstance(category, Basic):
            if not category.features:
                return category
            return Basic(category.name, FeatureBundle(
                (name, self.resolve(value))
                for name, value in category.features))
        if isinstance(category, Complex):
            return Complex(self.apply(category.result), category.slash,
                           self.apply(category.argument))
        if isinstance(category, Meta):
            bound = self.resolve_meta(category)
            return bound if isinstance(bound, Meta) else self.apply(bound)
        return category

    def __len__(self):
        return len(self._bindings)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self._bindings == other._bindings

    def __repr__(self):
        return f"Substitution({self._bindings!r})"


def _unify_values(a: str, b: str, subst: Substitution) -> bool:
    a, b = subst.resolve(a), subst.resolve(b)
    if a == b:
        return True
    if is_variable(a):
        subst.bind(a, b)
        return True
    if is_variable(b):
        subst.bind(b, a)
        return True
    return False


def unify_basic(a: Basic, b: Basic, subst: Substitution = None):
    """Unifies two basic categories. Features present on both sides must
    unify; a feature present on one side only is no constraint and is kept
    in the merged bundle.

    Parameters
    ----------
    a : Basic
        First category
    b : Basic
        Second category
    subst : Substitution [optional, default=None]
        Bindings made so far; left untouched

    Returns
    -------
    tuple[Substitution, FeatureBundle] or None
        The extended bindings and the merged bundle (with bindings
        applied), or None if the categories do not unify
    """
    trial = Substitution() if subst is None else subst.copy()
    if not _unify_features(a, b, trial):
        return None
    merged = [(name, trial.resolve(value)) for name, value in a.features]
    merged += [(name, trial.resolve(value)) for name, value in b.features
               if a.features.get(name) is None]
    return trial, FeatureBundle(merged)


def _unify_features(a: Basic, b: Basic, subst: Substitution) -> bool:
    if a.name != b.name:
        return False
    for name, value in a.features:
        other = b.features.get(name)
        if other is not None and not _unify_values(value, other, subst):
            return False
    return True


def _occurs(variable: str, category: Category, subst: Substitution) -> bool:
    return variable in category_variables(subst.apply(category))


def _unify(a: Category, b: Category, subst: Substitution) -> bool:
    a, b = subst.resolve_meta(a), subst.resolve_meta(b)
    if isinstance(a, Meta) or isinstance(b, Meta):
        if isinstance(a, Meta) and isinstance(b, Meta) and a.var == b.var:
            return True
        meta, other = (a, b) if isinstance(a, Meta) else (b, a)
        variable = "@" + meta.var
        if _occurs(variable, other, subst):
            return False
        subst.bind(variable, other)
        return True
    if isinstance(a, Basic) and isinstance(b, Basic):
        return _unify_features(a, b, subst)
    if isinstance(a, Complex) and isinstance(b, Complex):
        return (a.slash == b.slash and _unify(a.result, b.result, subst)
                and _unify(a.argument, b.argument, subst))
    if isinstance(a, Singleton) and isinstance(b, Singleton):
        return a.text == b.text
    return False


def unify_cat(a: Category, b: Category,
              subst: Substitution = None) -> Optional[Substitution]:
    """Unifies two categories. Meta variables bind whole categories (with
    an occurs check), complex categories unify componentwise under an
    identical slash, singletons only with the same singleton.

    Parameters
    ----------
    a : Category
        First category
    b : Category
        Second category
    subst : Substitution [optional, default=None]
        Bindings made so far; left untouched

    Returns
    -------
    Substitution or None
        The extended bindings, or None on failure
    """
    trial = Substitution() if subst is None else subst.copy()
    return trial if _unify(a, b, trial) else None


def fresh_variable(variable: str, avoid: set) -> str:
    """Numbers `variable` (`?x`, `@X`) until it is not in `avoid`."""
    base = re.sub(r"\d+$", "", variable) or variable
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def rename_variables(category: Category, renaming: dict) -> Category:
    if isinstance(category, Basic):
        if not category.features:
            return category
        return Basic(category.name, FeatureBundle(
            (name, renaming.get(value, value))
            for name, value in category.features))
    if isinstance(category, Complex):
        return Complex(rename_variables(category.result, renaming),
                       category.slash,
                       rename_variables(category.argument, renaming))
    if isinstance(category, Meta):
        renamed = renaming.get("@" + category.var)
        return Meta(renamed[1:]) if renamed else category
    return category


def rename_apart_all(categories: list, avoid: set) -> list:
    """Renames, consistently across `categories`, the variables that occur
    in `avoid`. Other variables keep their names."""
    own = set()
    for category in categories:
        own |= category_variables(category)
    clashes = sorted(own & set(avoid))
    if not clashes:
        return list(categories)
    taken = set(avoid) | own
    renaming = {}
    for variable in clashes:
        renaming[variable] = fresh_variable(variable, taken)
        taken.add(renaming[variable])
    return [rename_variables(category, renaming) for category in categories]


def rename_apart(category: Category, avoid: set) -> Category:
    """Renames the variables of `category` that occur in `avoid`, so the
    result shares no variable with it. Other variables keep their names.
    """
    return rename_apart_all([category], avoid)[0]
