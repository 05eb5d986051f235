#
# Predicate-argument structures (l-command) as untyped lambda terms
#

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    """A predicate or argument constant. `string` marks the legacy
    `!token` form, which never equals the plain constant of the same name.
    """
    name: str
    string: bool = False

    def __str__(self):
        return "!" + self.name if self.string else self.name


@dataclass(frozen=True)
class Abs:
    binder: str
    body: "LambdaTerm"

    def __str__(self):
        binders = []
        term = self
        while isinstance(term, Abs):
            binders.append(term.binder)
            term = term.body
        return "".join("\\" + b for b in binders) + "." + str(term)


@dataclass(frozen=True)
class App:
    fun: "LambdaTerm"
    arg: "LambdaTerm"

    def __str__(self):
        fun = f"({self.fun})" if isinstance(self.fun, Abs) else str(self.fun)
        if isinstance(self.arg, (App, Abs)):
            return f"{fun} ({self.arg})"
        return f"{fun} {self.arg}"


LambdaTerm = Union[Var, Const, Abs, App]


def apply_all(fun: LambdaTerm, *args: LambdaTerm) -> LambdaTerm:
    """Left-associated application `fun a1 a2 ...`."""
    for arg in args:
        fun = App(fun, arg)
    return fun


def abstract(binders, body: LambdaTerm) -> LambdaTerm:
    """Right-extending abstraction `\\b1\\b2.body`."""
    for binder in reversed(list(binders)):
        body = Abs(binder, body)
    return body


def free_variables(t: LambdaTerm) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Abs):
        return free_variables(t.body) - {t.binder}
    if isinstance(t, App):
        return free_variables(t.fun) | free_variables(t.arg)
    return set()


def names(t: LambdaTerm) -> set[str]:
    """Every name used in `t`: variables, binders and constants."""
    if isinstance(t, (Var, Const)):
        return {t.name}
    if isinstance(t, Abs):
        return names(t.body) | {t.binder}
    return names(t.fun) | names(t.arg)


def constants(t: LambdaTerm) -> list[Const]:
    if isinstance(t, Const):
        return [t]
    if isinstance(t, Var):
        return []
    if isinstance(t, Abs):
        return constants(t.body)
    return constants(t.fun) + constants(t.arg)


def leading_binders(t: LambdaTerm) -> tuple[list[str], LambdaTerm]:
    """Splits `\\x\\y.body` into (['x', 'y'], body)."""
    binders = []
    while isinstance(t, Abs):
        binders.append(t.binder)
        t = t.body
    return binders, t


def head(t: LambdaTerm) -> LambdaTerm:
    """The leftmost function of an application spine."""
    while isinstance(t, App):
        t = t.fun
    return t


def is_closed(t: LambdaTerm) -> bool:
    return not free_variables(t)
