"""Additively homogeneous endo-maps ``e → e`` (the Cayley representation).

Addition of Cayley homs is composition, so summing tangents costs O(1)
until the map is finally run.  Over sparse maps the run threads one private
dictionary through every insertion; since nothing else can observe that
dictionary, updating it in place is indistinguishable from rebuilding it.
"""
from __future__ import annotations

from .base import Tangent
from .sparse import SparseModule


class CayleyHom:
    __slots__ = ()


class _CId(CayleyHom):
    __slots__ = ()

    def __repr__(self):
        return "CayleyHom.zero"


class _CCompose(CayleyHom):
    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner


class _CLift(CayleyHom):
    # λm → m ⊕ elem
    __slots__ = ("elem",)

    def __init__(self, elem):
        self.elem = elem


class _CInsert(CayleyHom):
    # λm → insertWith (⊕) var value m
    __slots__ = ("var", "value")

    def __init__(self, var, value):
        self.var = var
        self.value = value


class _CLinLet(CayleyHom):
    # tangent of a let whose body map is already a Cayley hom
    __slots__ = ("var", "bound", "body", "lin")

    def __init__(self, var, bound, body, lin):
        self.var = var
        self.bound = bound
        self.body = body
        self.lin = lin


class _Restore:
    __slots__ = ("let", "old")

    def __init__(self, let, old):
        self.let = let
        self.old = old


_IDENTITY = _CId()
_MISSING = object()


class CayleyModule(Tangent):
    """Cayley homs over ``inner``.

    Scalar multiplication has no cheap form here (it round-trips through
    ``inner``); reverse mode avoids it by putting a linear hom on top.
    """

    def __init__(self, inner: Tangent):
        self.inner = inner
        self.scalars = inner.scalars
        self.arity = inner.arity
        self.counter = inner.counter
        self.name = f"cayley({inner.name})"
        self._sparse = isinstance(inner, SparseModule)

    def zero(self):
        return _IDENTITY

    def add(self, f, g):
        return _CCompose(f, g)

    def scale(self, d, f):
        self._scaled()
        return _CLift(self.inner.scale(d, self.lower(f)))

    def delta(self, v):
        return self.scaled_delta(v, self.scalars.one)

    def scaled_delta(self, v, d):
        if not self._sparse:
            return _CLift(self.inner.scaled_delta(v, d))
        self.check_var(v)
        self._delta()
        return _CInsert(v, d)

    def lift(self, e) -> CayleyHom:
        """``λe' → e' ⊕ e``."""
        return _CLift(e)

    def lower(self, f: CayleyHom):
        """Apply to ``zero``."""
        return self.run(f, self.inner.zero())

    def rep(self, dense):
        return self.lift(self.inner.rep(dense))

    def abs(self, f):
        return self.inner.abs(self.lower(f))

    def component(self, f, v):
        return self.inner.component(self.lower(f), v)

    def eq(self, f, g):
        return self.inner.eq(self.lower(f), self.lower(g))

    def linear_let(self, y, bound, body, lin):
        if not self._sparse:
            dy = self.component(body, y)
            return self.add(lin.apply(bound, dy), self.purge(body, y))
        return _CLinLet(y, bound, body, lin)

    def run(self, f: CayleyHom, start):
        """Apply ``f`` to the inner element ``start``."""
        if self._sparse:
            return self._run_sparse(f, start)
        acc = start
        tasks = [f]
        while tasks:
            node = tasks.pop()
            cls = type(node)
            if cls is _CCompose:
                tasks.append(node.outer)
                tasks.append(node.inner)
            elif cls is _CLift:
                acc = self.inner.add(acc, node.elem)
            elif cls is _CId:
                pass
            else:
                raise TypeError(f"unsupported Cayley node for {self.inner.name}: {node!r}")
        return acc

    def _run_sparse(self, f, start: dict) -> dict:
        inner: SparseModule = self.inner
        zero = self.scalars.zero
        m = dict(start)
        self._touch(len(start))
        insert = inner.insert_with_add
        tasks: list = [f]
        while tasks:
            node = tasks.pop()
            cls = type(node)
            if cls is _CInsert:
                insert(m, node.var, node.value)
            elif cls is _CCompose:
                tasks.append(node.outer)
                tasks.append(node.inner)
            elif cls is _CId:
                pass
            elif cls is _CLift:
                for k, v in node.elem.items():
                    insert(m, k, v)
            elif cls is _CLinLet:
                # set aside whatever the shadowed variable holds so far
                self._touch()
                old = m.pop(node.var, _MISSING)
                tasks.append(_Restore(node, old))
                tasks.append(node.body)
            elif cls is _Restore:
                let = node.let
                self._touch(2)
                dy = m.pop(let.var, zero)
                if node.old is not _MISSING:
                    m[let.var] = node.old
                tasks.append(let.lin.apply(let.bound, dy))
            else:
                raise TypeError(f"not a Cayley hom: {node!r}")
        return m


def cayley_rep(module: CayleyModule, e) -> CayleyHom:
    return module.lift(e)


def cayley_abs(module: CayleyModule, f: CayleyHom):
    return module.lower(f)
