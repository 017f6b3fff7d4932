"""Linear maps ``d ⊸ e`` as a first-order data structure.

A ``LinHom`` is never an arbitrary Python function: it is built only from
``zero``, ``add``, ``scale``, ``delta``, ``lift`` (the representation map) and
``letin``, so multiplicative homogeneity holds by construction.  Applying a
hom walks this structure with an explicit stack; for reverse mode that walk
*is* the backward pass.
"""
from __future__ import annotations

from .base import Tangent


class LinHom:
    __slots__ = ()


class _LZero(LinHom):
    __slots__ = ()

    def __repr__(self):
        return "LinHom.zero"


class _LAdd(LinHom):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right


class _LScale(LinHom):
    # λd → arg (factor ⊗ d)
    __slots__ = ("factor", "arg")

    def __init__(self, factor, arg):
        self.factor = factor
        self.arg = arg


class _LDelta(LinHom):
    __slots__ = ("var",)

    def __init__(self, var):
        self.var = var


class _LLift(LinHom):
    # λd → d • elem
    __slots__ = ("elem",)

    def __init__(self, elem):
        self.elem = elem


class _LLet(LinHom):
    __slots__ = ("var", "bound", "body")

    def __init__(self, var, bound, body):
        self.var = var
        self.bound = bound
        self.body = body


class _Combine:
    __slots__ = ()


class _LetPost:
    __slots__ = ("let",)

    def __init__(self, let):
        self.let = let


_ZERO_HOM = _LZero()
_COMBINE = _Combine()


class LinearModule(Tangent):
    """``scalars ⊸ target``: linear maps from scalars into ``target``.

    ``scale`` only records the factor; the multiplication happens once per
    edge when the map is applied, instead of once per tangent entry.
    """

    def __init__(self, target: Tangent):
        self.target = target
        self.scalars = target.scalars
        self.arity = target.arity
        self.counter = target.counter
        self.name = f"linear({target.name})"

    def zero(self):
        return _ZERO_HOM

    def add(self, f, g):
        return _LAdd(f, g)

    def scale(self, d, f):
        self._scaled()
        return _LScale(d, f)

    def delta(self, v):
        self.check_var(v)
        self._delta()
        return _LDelta(v)

    def lift(self, e) -> LinHom:
        """``λd → d • e``."""
        return _LLift(e)

    def lower(self, f: LinHom):
        """Apply at ``one``, recovering the target element."""
        return self.apply(f, self.scalars.one)

    def rep(self, dense):
        return self.lift(self.target.rep(dense))

    def abs(self, f):
        return self.target.abs(self.lower(f))

    def component(self, f, v):
        return self.target.component(self.lower(f), v)

    def letin(self, y, de1, de2):
        return _LLet(y, de1, de2)

    def eq(self, f, g):
        return self.target.eq(self.lower(f), self.lower(g))

    def apply(self, f: LinHom, d):
        """Evaluate ``f`` at scalar ``d``, producing a target element."""
        target = self.target
        mul = self.scalars.mul
        tasks: list = [(f, d)]
        out: list = []
        while tasks:
            node, d = tasks.pop()
            cls = type(node)
            if cls is _LAdd:
                tasks.append((_COMBINE, None))
                tasks.append((node.right, d))
                tasks.append((node.left, d))
            elif cls is _LScale:
                tasks.append((node.arg, mul(node.factor, d)))
            elif cls is _LDelta:
                out.append(target.scaled_delta(node.var, d))
            elif cls is _Combine:
                b = out.pop()
                out[-1] = target.add(out[-1], b)
            elif cls is _LZero:
                out.append(target.zero())
            elif cls is _LLift:
                out.append(target.scale(d, node.elem))
            elif cls is _LLet:
                tasks.append((_LetPost(node), None))
                tasks.append((node.body, d))
            elif cls is _LetPost:
                let = node.let
                out[-1] = linear_let(target, let.var, let.bound, out[-1], self)
            else:
                raise TypeError(f"not a linear map: {node!r}")
        return out[0]


def linear_let(target: Tangent, y: int, bound: LinHom, body_value, lin: LinearModule):
    """Finish ``letin`` once the body's target value is known."""
    special = getattr(target, "linear_let", None)
    if special is not None:
        return special(y, bound, body_value, lin)
    dy = target.component(body_value, y)
    return target.add(lin.apply(bound, dy), target.purge(body_value, y))


def linhom_rep(module: LinearModule, e) -> LinHom:
    return module.lift(e)


def linhom_abs(module: LinearModule, f: LinHom):
    return module.lower(f)


def linhom_apply(module: LinearModule, f: LinHom, d):
    return module.apply(f, d)
