"""Sparse exact arithmetic in Z[H_0, ..., H_{M-1}] / (H_i^2).

This is the Chow ring of a product of M projective lines.  A monomial is a
square-free product of generators and is stored as a bitmask (bit ``i`` set
means ``H_i`` divides it); Python integers are unbounded, so the same encoding
serves every M.  Coefficients are Python ints.

All values are immutable.  The generator count M travels with every value and
mixing two different counts raises :class:`ContextError`.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import ContextError, NotInvertibleError

__all__ = [
    "NilPoly",
    "add",
    "sub",
    "scale",
    "mul",
    "pow",
    "invert_unit",
    "graded_part",
    "truncate",
    "top_coefficient",
    "pair_top",
    "contract",
    "linear_power",
    "coefficient",
    "restrict",
    "mask_of",
    "indices_of",
]


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative generator index {i}")
        bit = 1 << i
        if mask & bit:
            raise ValueError(f"repeated generator index {i}")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class NilPoly:
    """An element of the ring, as a sparse map from monomial bitmask to coefficient."""

    __slots__ = ("_terms", "_ngens")

    def __init__(self, terms: Mapping[int, int] | None = None, ngens: int = 0):
        if ngens < 0:
            raise ValueError("ngens must be nonnegative")
        full = (1 << ngens) - 1
        clean: dict[int, int] = {}
        for mask, coeff in (terms or {}).items():
            if mask < 0 or mask & ~full:
                raise ValueError(f"monomial {indices_of(mask)} outside {ngens} generators")
            if coeff:
                clean[mask] = int(coeff)
        self._terms = clean
        self._ngens = ngens

    @classmethod
    def _wrap(cls, terms: dict[int, int], ngens: int) -> "NilPoly":
        # trusted path: caller guarantees no zero coefficients and in-range masks
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._ngens = ngens
        return obj

    # constructors

    @classmethod
    def zero(cls, ngens: int) -> "NilPoly":
        return cls._wrap({}, ngens)

    @classmethod
    def constant(cls, value: int, ngens: int) -> "NilPoly":
        return cls._wrap({0: int(value)} if value else {}, ngens)

    @classmethod
    def one(cls, ngens: int) -> "NilPoly":
        return cls.constant(1, ngens)

    @classmethod
    def generator(cls, index: int, ngens: int) -> "NilPoly":
        if not 0 <= index < ngens:
            raise ValueError(f"generator {index} outside [0, {ngens})")
        return cls._wrap({1 << index: 1}, ngens)

    @classmethod
    def monomial(cls, indices: Iterable[int], ngens: int, coeff: int = 1) -> "NilPoly":
        return cls({mask_of(indices): coeff}, ngens)

    @classmethod
    def linear(cls, coefficients: Mapping[int, int], ngens: int) -> "NilPoly":
        """Z-linear combination of generators, ``{index: coefficient}``."""
        return cls({1 << i: c for i, c in coefficients.items()}, ngens)

    # read access

    @property
    def ngens(self) -> int:
        return self._ngens

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def degree(self) -> int:
        """Largest total degree of a term; -1 for the zero element."""
        return max((m.bit_count() for m in self._terms), default=-1)

    def min_degree(self) -> int:
        """Smallest total degree of a term; -1 for the zero element."""
        return min((m.bit_count() for m in self._terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(m.bit_count() == d for m in self._terms)

    # dunder plumbing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, NilPoly):
            return NotImplemented
        return self._ngens == other._ngens and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._ngens, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"NilPoly({self}, ngens={self._ngens})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mask in sorted(self._terms, key=lambda m: (m.bit_count(), indices_of(m))):
            coeff = self._terms[mask]
            mono = "*".join(f"H{i}" for i in indices_of(mask))
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _coerce(self, other: "NilPoly | int") -> "NilPoly":
        if isinstance(other, NilPoly):
            return other
        if isinstance(other, int):
            return NilPoly.constant(other, self._ngens)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __neg__(self) -> "NilPoly":
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        if isinstance(other, NilPoly):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "NilPoly":
        return pow(self, k)


def _same_context(p: NilPoly, q: NilPoly) -> int:
    if p._ngens != q._ngens:
        raise ContextError(f"generator counts differ: {p._ngens} vs {q._ngens}")
    return p._ngens


def add(p: NilPoly, q: NilPoly) -> NilPoly:
    ngens = _same_context(p, q)
    out = dict(p._terms)
    for mask, coeff in q._terms.items():
        total = out.get(mask, 0) + coeff
        if total:
            out[mask] = total
        else:
            out.pop(mask, None)
    return NilPoly._wrap(out, ngens)


def sub(p: NilPoly, q: NilPoly) -> NilPoly:
    return add(p, scale(q, -1))


def scale(p: NilPoly, c: int) -> NilPoly:
    if not c:
        return NilPoly.zero(p._ngens)
    return NilPoly._wrap({m: c * v for m, v in p._terms.items()}, p._ngens)


def _support(p: NilPoly) -> int:
    mask = 0
    for m in p._terms:
        mask |= m
    return mask


def mul(p: NilPoly, q: NilPoly, max_degree: int | None = None) -> NilPoly:
    """Product in the ring; terms of degree above ``max_degree`` are discarded."""
    ngens = _same_context(p, q)
    if max_degree is None:
        max_degree = ngens
    if not p._terms or not q._terms:
        return NilPoly.zero(ngens)
    if len(p._terms) > len(q._terms):
        p, q = q, p
    if not _support(p) & _support(q):
        # disjoint generators: no cancellation and no repeated monomials
        return NilPoly._wrap(
            {ma | mb: ca * cb for ma, ca in p._terms.items() for mb, cb in q._terms.items()
             if (ma | mb).bit_count() <= max_degree},
            ngens,
        )
    rhs = sorted(((m.bit_count(), m, c) for m, c in q._terms.items()))
    out: dict[int, int] = {}
    get = out.get
    for ma, ca in p._terms.items():
        room = max_degree - ma.bit_count()
        if room < 0:
            continue
        for db, mb, cb in rhs:
            if db > room:
                break
            if ma & mb:
                continue
            key = ma | mb
            out[key] = get(key, 0) + ca * cb
    return NilPoly._wrap({m: c for m, c in out.items() if c}, ngens)


def pow(p: NilPoly, k: int, max_degree: int | None = None) -> NilPoly:  # noqa: A001
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = NilPoly.one(p._ngens)
    base = p
    while k:
        if k & 1:
            result = mul(result, base, max_degree)
        k >>= 1
        if k:
            base = mul(base, base, max_degree)
    if max_degree is not None:
        result = truncate(result, max_degree)
    return result


def invert_unit(p: NilPoly, max_degree: int | None = None) -> NilPoly:
    """Inverse of ``p`` modulo terms of degree above ``max_degree``.

    Requires constant term +1 or -1.  Writing ``p = u(1 - x)`` with ``u = +-1``
    and ``x`` without constant term, the inverse is ``u * sum_t x^t``; the sum is
    finite because ``x^t = 0`` once ``t`` exceeds the generator count.
    """
    ngens = p._ngens
    unit = p.constant_term()
    if unit not in (1, -1):
        raise NotInvertibleError(f"constant term {unit} is not a unit")
    if max_degree is None or max_degree > ngens:
        max_degree = ngens
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    one = NilPoly.one(ngens)
    x = sub(one, scale(p, unit))
    if x.is_homogeneous(1):
        return scale(linear_power(scale(x, -1), -1, max_degree=max_degree), unit)
    acc = one
    term = one
    for _ in range(max_degree):
        term = mul(term, x, max_degree)
        if term.is_zero():
            break
        acc = add(acc, term)
    return scale(acc, unit)


def linear_power(
    x: NilPoly, a: int, divide: Iterable[int] = (), max_degree: int | None = None
) -> NilPoly:
    """``contract((1 + x)^a, divide)`` for a linear form ``x`` and any integer ``a``.

    The coefficient of ``H_S`` is ``a (a-1) ... (a-|S|+1) * prod_{i in S} x_i``,
    which for ``a = -1`` is the geometric series ``1 / (1 + x)``.  With
    ``divide`` only the terms divisible by ``H_divide`` are generated, and that
    monomial is divided out.  ``max_degree`` bounds degrees before contraction.
    """
    if not x.is_homogeneous(1):
        raise ValueError("linear_power needs a linear form")
    ngens = x._ngens
    if max_degree is None or max_degree > ngens:
        max_degree = ngens
    fixed = mask_of(divide)
    if fixed >> ngens:
        raise ValueError(f"monomial {indices_of(fixed)} outside {ngens} generators")
    shift = fixed.bit_count()
    base = 1
    for i in indices_of(fixed):
        base *= x._terms.get(1 << i, 0)
    if not base or shift > max_degree:
        return NilPoly.zero(ngens)
    room = max_degree - shift
    prods = {0: base}
    for bit, c in x._terms.items():
        if bit & fixed:
            continue
        prods.update({m | bit: v * c for m, v in prods.items() if m.bit_count() < room})
    falling = [1]
    for k in range(max_degree):
        falling.append(falling[-1] * (a - k))
    out = {}
    for m, v in prods.items():
        f = falling[m.bit_count() + shift]
        if f:
            out[m] = v * f
    return NilPoly._wrap(out, ngens)


def graded_part(p: NilPoly, d: int) -> NilPoly:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return NilPoly._wrap({m: c for m, c in p._terms.items() if m.bit_count() == d}, p._ngens)


def truncate(p: NilPoly, max_degree: int) -> NilPoly:
    return NilPoly._wrap(
        {m: c for m, c in p._terms.items() if m.bit_count() <= max_degree}, p._ngens
    )


def coefficient(p: NilPoly, indices: Iterable[int]) -> int:
    return p._terms.get(mask_of(indices), 0)


def top_coefficient(p: NilPoly) -> int:
    """Coefficient of H_0 H_1 ... H_{M-1}, i.e. the integral over the product of lines."""
    return p._terms.get((1 << p._ngens) - 1, 0)


def pair_top(p: NilPoly, q: NilPoly) -> int:
    """``top_coefficient(mul(p, q))`` without forming the product."""
    ngens = _same_context(p, q)
    if len(p._terms) > len(q._terms):
        p, q = q, p
    full = (1 << ngens) - 1
    other = q._terms
    return sum(c * other.get(full ^ m, 0) for m, c in p._terms.items())


def contract(p: NilPoly, indices: Iterable[int]) -> NilPoly:
    """Divide out the monomial ``H_S`` from the terms it divides; drop the rest.

    If ``q`` involves no generator of ``S`` then
    ``top_coefficient(q * p) == top_coefficient(q * H_S-free part)``, that is
    ``pair_top(q, p) == pair_top(q * monomial(S), contract(p, S))``.
    """
    mask = mask_of(indices)
    if mask >> p._ngens:
        raise ValueError(f"monomial {indices_of(mask)} outside {p._ngens} generators")
    return NilPoly._wrap({m ^ mask: c for m, c in p._terms.items() if m & mask == mask}, p._ngens)


def restrict(p: NilPoly, kill: Iterable[int]) -> NilPoly:
    """Set the listed generators to zero (restriction to a sub-product of lines)."""
    kill_mask = 0
    for i in kill:
        if not 0 <= i < p._ngens:
            raise ValueError(f"generator {i} outside [0, {p._ngens})")
        kill_mask |= 1 << i
    return NilPoly._wrap({m: c for m, c in p._terms.items() if not m & kill_mask}, p._ngens)
