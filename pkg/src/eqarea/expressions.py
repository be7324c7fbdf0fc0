"""Safe compilation of arithmetic expression strings into numpy callables.

Only a small whitelist of syntax is accepted: numbers, one free variable,
the constants ``pi`` and ``e``, the usual arithmetic operators (``^`` is
accepted as a synonym for ``**``) and a handful of elementary functions.
"""

from __future__ import annotations

import ast

import numpy as np

from eqarea.errors import ConfigurationError

_FUNCTIONS = {
    "exp": np.exp,
    "abs": np.abs,
    "sqrt": np.sqrt,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "tanh": np.tanh,
}
_CONSTANTS = {"pi": np.pi, "e": np.e}
_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_UNARYOPS = (ast.UAdd, ast.USub)


def _check(node: ast.AST, variable: str, source: str) -> None:
    for child in ast.walk(node):
        if isinstance(child, (ast.Expression, ast.Load)):
            continue
        if isinstance(child, ast.BinOp):
            if not isinstance(child.op, _BINOPS):
                raise ConfigurationError(f"operator not allowed in {source!r}")
        elif isinstance(child, ast.UnaryOp):
            if not isinstance(child.op, _UNARYOPS):
                raise ConfigurationError(f"operator not allowed in {source!r}")
        elif isinstance(child, ast.Call):
            if not (isinstance(child.func, ast.Name) and child.func.id in _FUNCTIONS):
                raise ConfigurationError(f"unknown function in {source!r}")
            if child.keywords or len(child.args) != 1:
                raise ConfigurationError(f"functions take one argument in {source!r}")
        elif isinstance(child, ast.Name):
            if child.id not in _FUNCTIONS and child.id not in _CONSTANTS and child.id != variable:
                raise ConfigurationError(f"unknown name {child.id!r} in {source!r}")
        elif isinstance(child, ast.Constant):
            if not isinstance(child.value, (int, float)) or isinstance(child.value, bool):
                raise ConfigurationError(f"non-numeric constant in {source!r}")
        elif isinstance(child, (*_BINOPS, *_UNARYOPS)):
            continue
        else:
            raise ConfigurationError(
                f"unsupported syntax {type(child).__name__} in {source!r}")


class Expression:
    """A vectorised function of one variable built from a source string.

    Instances are picklable (only the source is stored) so they can cross
    process boundaries in parallel sweeps.

    >>> Expression("0.5*u^2")(np.array([2.0]))
    array([2.])
    """

    def __init__(self, source: str, variable: str = "u"):
        self.source = source
        self.variable = variable
        self._code = self._compile()

    def _compile(self):
        text = self.source.replace("^", "**")
        try:
            tree = ast.parse(text, mode="eval")
        except SyntaxError as exc:
            raise ConfigurationError(f"cannot parse expression {self.source!r}: {exc.msg}") from None
        _check(tree, self.variable, self.source)
        return compile(tree, f"<expr {self.source}>", "eval")

    def __call__(self, value):
        arr = np.asarray(value, dtype=float)
        namespace = {"__builtins__": {}, **_FUNCTIONS, **_CONSTANTS, self.variable: arr}
        out = eval(self._code, namespace)  # noqa: S307 -- whitelisted AST only
        return np.broadcast_to(np.asarray(out, dtype=float), arr.shape).copy() if arr.ndim else float(out)

    def __getstate__(self):
        return {"source": self.source, "variable": self.variable}

    def __setstate__(self, state):
        self.source = state["source"]
        self.variable = state["variable"]
        self._code = self._compile()

    def __repr__(self):
        return f"Expression({self.source!r})"
