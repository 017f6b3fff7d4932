"""Algebraic signatures and concrete scalar instances.

Instances are passed around explicitly (dictionary passing): an algorithm
receives a ``Semiring`` object alongside plain values instead of relying on
operator overloading of the values themselves.  This keeps ``zero`` and
``one`` available without a witness value and lets one Python type (``int``)
serve several algebras.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields
from fractions import Fraction


class UnsupportedPrimitive(TypeError):
    """The scalar algebra lacks an operation the expression needs."""


class Semiring:
    """Commutative semiring: ``zero``, ``one``, ``add``, ``mul``.

    Subclasses may additionally implement ``neg`` (ring) and ``sin``/``cos``
    (trig).  The defaults raise ``UnsupportedPrimitive``.
    """

    name = "semiring"
    zero: object
    one: object
    exact = False

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise UnsupportedPrimitive(f"{self.name} has no negation")

    def sin(self, a):
        raise UnsupportedPrimitive(f"{self.name} has no sin")

    def cos(self, a):
        raise UnsupportedPrimitive(f"{self.name} has no cos")

    @property
    def is_ring(self) -> bool:
        return type(self).neg is not Semiring.neg

    @property
    def has_trig(self) -> bool:
        return type(self).sin is not Semiring.sin

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def from_int(self, n: int):
        """``n`` copies of ``one`` added together, by double-and-add."""
        if n < 0:
            return self.neg(self.from_int(-n))
        acc = self.zero
        unit = self.one
        while n:
            if n & 1:
                acc = self.add(acc, unit)
            n >>= 1
            if n:
                unit = self.add(unit, unit)
        return acc

    def __repr__(self):
        return f"<{self.name}>"


class IntRing(Semiring):
    name = "int"
    zero = 0
    one = 1
    exact = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n):
        return n


class NatSemiring(IntRing):
    """Integers restricted to the semiring signature (no negation)."""

    name = "nat"
    neg = Semiring.neg


class RationalField(Semiring):
    """Exact rationals; ``Fraction`` keeps lowest terms with positive denominator."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)
    exact = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n):
        return Fraction(n)


class FloatField(Semiring):
    name = "float"
    zero = 0.0
    one = 1.0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sin(self, a):
        return math.sin(a)

    def cos(self, a):
        return math.cos(a)

    def from_int(self, n):
        return float(n)


MERSENNE_61 = (1 << 61) - 1


class PrimeField(Semiring):
    """Integers modulo a prime, used for probing expression equality.

    ``sin`` and ``cos`` are modelled as uninterpreted functions: keyed hashes
    of their argument.  Probing therefore identifies trig terms only up to
    syntactic equality of their (probed) arguments.
    """

    name = "prime-field"
    exact = True

    def __init__(self, p: int = MERSENNE_61, key: bytes = b""):
        self.p = p
        self.zero = 0
        self.one = 1
        self.key = key

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def _hash(self, tag: bytes, a: int) -> int:
        h = hashlib.blake2b(a.to_bytes(16, "little"), key=self.key + tag, digest_size=16)
        return int.from_bytes(h.digest(), "little") % self.p

    def sin(self, a):
        return self._hash(b"sin", a)

    def cos(self, a):
        return self._hash(b"cos", a)

    def from_int(self, n):
        return n % self.p


INT = IntRing()
NAT = NatSemiring()
RATIONAL = RationalField()
FLOAT = FloatField()


# --- modules ---------------------------------------------------------------


class Module:
    """A commutative monoid with scalar multiplication by ``scalars``.

    Tangent representations additionally provide ``delta`` (Kronecker) and the
    ``rep``/``abs`` pair relating them to dense tangents (``CorrectAD``).
    """

    name = "module"
    scalars: Semiring

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def scale(self, d, e):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        return f"<{self.name} over {self.scalars.name}>"


class ScalarModule(Module):
    """A semiring seen as a module over itself (scale is multiplication)."""

    def __init__(self, scalars: Semiring):
        self.scalars = scalars
        self.name = f"{scalars.name}-module"

    def zero(self):
        return self.scalars.zero

    def add(self, a, b):
        return self.scalars.add(a, b)

    def scale(self, d, e):
        return self.scalars.mul(d, e)

    def eq(self, a, b):
        return self.scalars.eq(a, b)


# --- instrumentation -------------------------------------------------------


@dataclass
class OpCounter:
    """Operation tallies for one profiling run."""

    adds: int = 0
    muls: int = 0
    scales: int = 0
    deltas: int = 0
    touches: int = 0

    def snapshot(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)


class CountingSemiring(Semiring):
    """Delegates to ``inner`` and tallies every ``add``/``mul`` in ``counter``.

    Values are the inner semiring's values, unwrapped, so counting never
    changes a result.
    """

    def __init__(self, inner: Semiring, counter: OpCounter | None = None):
        self.inner = inner
        self.counter = counter if counter is not None else OpCounter()
        self.name = f"counted-{inner.name}"
        self.zero = inner.zero
        self.one = inner.one
        self.exact = inner.exact

    def add(self, a, b):
        self.counter.adds += 1
        return self.inner.add(a, b)

    def mul(self, a, b):
        self.counter.muls += 1
        return self.inner.mul(a, b)

    def neg(self, a):
        return self.inner.neg(a)

    def sin(self, a):
        return self.inner.sin(a)

    def cos(self, a):
        return self.inner.cos(a)

    @property
    def is_ring(self):
        return self.inner.is_ring

    @property
    def has_trig(self):
        return self.inner.has_trig

    def eq(self, a, b):
        return self.inner.eq(a, b)


def counter_of(algebra) -> OpCounter | None:
    return getattr(algebra, "counter", None)


# --- shallow embedding -----------------------------------------------------


class Scalar:
    """A value paired with its semiring so ordinary Python operators work.

    Generic programs are written against ``Scalar`` (``lambda x, y: x*y + x + 1``)
    and can be run at any semiring.  Non-negative integer literals are coerced
    through ``Semiring.from_int``.
    """

    __slots__ = ("sr", "v")

    def __init__(self, sr: Semiring, v):
        self.sr = sr
        self.v = v

    def _lift(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Scalar(self.sr, self.sr.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Scalar(self.sr, self.sr.add(self.v, o.v))

    def __radd__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Scalar(self.sr, self.sr.add(o.v, self.v))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Scalar(self.sr, self.sr.mul(self.v, o.v))

    def __rmul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Scalar(self.sr, self.sr.mul(o.v, self.v))

    def __neg__(self):
        return Scalar(self.sr, self.sr.neg(self.v))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.sr.eq(self.v, o.v)

    __hash__ = None

    def __repr__(self):
        return f"Scalar({self.v!r})"


def sin(x: Scalar) -> Scalar:
    return Scalar(x.sr, x.sr.sin(x.v))


def cos(x: Scalar) -> Scalar:
    return Scalar(x.sr, x.sr.cos(x.v))


def counted(value, counter: OpCounter, inner: Semiring = INT) -> Scalar:
    """Wrap ``value`` so arithmetic on it is tallied in ``counter``."""
    return Scalar(CountingSemiring(inner, counter), value)
