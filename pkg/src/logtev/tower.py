"""Projective bundles over a product of projective lines.

Classes on ``P(E)`` are written as polynomials in the relative hyperplane
class zeta with coefficients in the base ring (:class:`ZetaPoly`).  Zeta is
never reduced by its Chow-ring relation; push-forward is the only way it is
eliminated.

Push-forward convention.  For a bundle E of rank e presented by Chern roots,
``S(E) = 1 / c(E) = 1 / prod(1 + root)`` and

    pi_*(zeta^(e - 1 + t)) = S_t(E),   pi_*(zeta^u) = 0 for u < e - 1.

Summands whose first Chern class is ``-H`` therefore contribute factors
``(1 - H)`` to ``c(E)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import nilring
from .errors import ContextError, RankError, TruncationError
from .nilring import NilPoly

__all__ = [
    "ZetaPoly",
    "BundleData",
    "base_classes",
    "segre_from_roots",
    "segre_series_zeta",
    "segre_e2_xrsa",
    "pushforward_zeta",
    "segre_factors",
    "collapse_zeta",
]


class ZetaPoly:
    """Polynomial in zeta with :class:`NilPoly` coefficients, ``coeffs[u]`` at ``zeta^u``."""

    __slots__ = ("_coeffs", "_ngens")

    def __init__(self, coeffs: Iterable[NilPoly], ngens: int):
        coeffs = list(coeffs)
        for c in coeffs:
            if c.ngens != ngens:
                raise ContextError(f"coefficient over {c.ngens} generators, expected {ngens}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self._coeffs = tuple(coeffs)
        self._ngens = ngens

    @classmethod
    def from_nil(cls, p: NilPoly) -> "ZetaPoly":
        return cls([p], p.ngens)

    @classmethod
    def zeta(cls, ngens: int, power: int = 1, coeff: int = 1) -> "ZetaPoly":
        zero = NilPoly.zero(ngens)
        return cls([zero] * power + [NilPoly.constant(coeff, ngens)], ngens)

    @classmethod
    def zero(cls, ngens: int) -> "ZetaPoly":
        return cls([], ngens)

    @classmethod
    def one(cls, ngens: int) -> "ZetaPoly":
        return cls.from_nil(NilPoly.one(ngens))

    @property
    def ngens(self) -> int:
        return self._ngens

    @property
    def coeffs(self) -> tuple[NilPoly, ...]:
        return self._coeffs

    def zeta_degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, u: int) -> NilPoly:
        if 0 <= u < len(self._coeffs):
            return self._coeffs[u]
        return NilPoly.zero(self._ngens)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_homogeneous(self, d: int) -> bool:
        """Every term ``zeta^u * H_S`` has ``u + |S| == d``."""
        return all(c.is_homogeneous(d - u) for u, c in enumerate(self._coeffs))

    def graded_part(self, d: int) -> "ZetaPoly":
        return ZetaPoly(
            [nilring.graded_part(c, d - u) if d >= u else NilPoly.zero(self._ngens)
             for u, c in enumerate(self._coeffs[: d + 1])],
            self._ngens,
        )

    def at_zeta_zero(self) -> NilPoly:
        """Restriction along a locus where the tautological line bundle is trivial."""
        return self.coefficient(0)

    def shift(self, k: int) -> "ZetaPoly":
        """Multiply by ``zeta^k``."""
        if self.is_zero():
            return self
        return ZetaPoly([NilPoly.zero(self._ngens)] * k + list(self._coeffs), self._ngens)

    def restrict(self, kill: Iterable[int]) -> "ZetaPoly":
        kill = tuple(kill)
        return ZetaPoly([nilring.restrict(c, kill) for c in self._coeffs], self._ngens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        return self._ngens == other._ngens and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._ngens, self._coeffs))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "ZetaPoly(0)"
        parts = [f"({c})*z^{u}" for u, c in enumerate(self._coeffs) if not c.is_zero()]
        return "ZetaPoly(" + " + ".join(parts) + ")"

    def _lift(self, other) -> "ZetaPoly":
        if isinstance(other, ZetaPoly):
            if other._ngens != self._ngens:
                raise ContextError("generator counts differ")
            return other
        if isinstance(other, NilPoly):
            return ZetaPoly.from_nil(other)
        if isinstance(other, int):
            return ZetaPoly.from_nil(NilPoly.constant(other, self._ngens))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        size = max(len(self._coeffs), len(other._coeffs))
        return ZetaPoly(
            [nilring.add(self.coefficient(u), other.coefficient(u)) for u in range(size)],
            self._ngens,
        )

    __radd__ = __add__

    def __neg__(self) -> "ZetaPoly":
        return ZetaPoly([-c for c in self._coeffs], self._ngens)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "ZetaPoly", max_degree: int | None = None) -> "ZetaPoly":
        """Product, dropping terms of total (zeta + base) degree above ``max_degree``."""
        other = self._lift(other)
        ngens = self._ngens
        out = [NilPoly.zero(ngens)] * (len(self._coeffs) + len(other._coeffs))
        for u, cu in enumerate(self._coeffs):
            if cu.is_zero():
                continue
            for v, cv in enumerate(other._coeffs):
                if cv.is_zero():
                    continue
                room = None if max_degree is None else max_degree - u - v
                if room is not None and room < 0:
                    break
                out[u + v] = nilring.add(out[u + v], nilring.mul(cu, cv, room))
        return ZetaPoly(out, ngens)

    def pow(self, k: int, max_degree: int | None = None) -> "ZetaPoly":
        result = ZetaPoly.one(self._ngens)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, max_degree)
            k >>= 1
            if k:
                base = base.mul(base, max_degree)
        return result

    def __pow__(self, k: int) -> "ZetaPoly":
        return self.pow(k)


@dataclass(frozen=True)
class BundleData:
    """Rank and Segre classes ``S_0, ..., S_max_degree`` of a split bundle on the base."""

    rank: int
    segre: tuple[NilPoly, ...]

    @property
    def ngens(self) -> int:
        return self.segre[0].ngens

    @property
    def max_degree(self) -> int:
        return len(self.segre) - 1

    def segre_class(self, t: int) -> NilPoly:
        if t < 0:
            return NilPoly.zero(self.ngens)
        if t <= self.max_degree:
            return self.segre[t]
        if t > self.ngens:
            return NilPoly.zero(self.ngens)
        raise TruncationError(f"S_{t} requested, only computed through S_{self.max_degree}")


def base_classes(mu: Sequence[Sequence[int]]) -> tuple[int, list[list[int]], list[NilPoly]]:
    """Lay out one P^1 factor per part and build ``H_j = sum_v mu_{j,v} H_{j,v}``.

    Global indices are assigned in order j = 0, 1, ..., then v = 1, ..., m_j.
    Returns ``(M, layout, H)`` with ``layout[j][v-1]`` the index of ``H_{j,v}``.
    """
    ngens = sum(len(parts) for parts in mu)
    layout: list[list[int]] = []
    classes: list[NilPoly] = []
    nxt = 0
    for parts in mu:
        idx = list(range(nxt, nxt + len(parts)))
        nxt += len(parts)
        layout.append(idx)
        classes.append(NilPoly.linear(dict(zip(idx, parts)), ngens))
    return ngens, layout, classes


def segre_from_roots(roots: Sequence[NilPoly], max_degree: int | None = None) -> BundleData:
    """Segre classes of the bundle with the given Chern roots (degree-1 classes)."""
    if not roots:
        raise RankError("a bundle needs at least one summand")
    ngens = roots[0].ngens
    if max_degree is None:
        max_degree = ngens
    # 1 / prod(1 + root) == prod(1 / (1 + root)); each factor is a closed-form series
    inverse = NilPoly.one(ngens)
    for factor in segre_factors(roots, min(max_degree, ngens)):
        inverse = nilring.mul(inverse, factor, max_degree)
    buckets: list[dict[int, int]] = [{} for _ in range(max_degree + 1)]
    for m, c in inverse.items():
        buckets[m.bit_count()][m] = c
    pieces = [NilPoly._wrap(b, ngens) for b in buckets]
    return BundleData(rank=len(roots), segre=tuple(pieces))


def segre_series_zeta(roots: Sequence[ZetaPoly], max_degree: int) -> list[ZetaPoly]:
    """Graded pieces of ``1 / prod(1 + root)`` for roots that may involve zeta.

    Each root must be homogeneous of total degree 1.  Every factor is expanded
    as a geometric series; zeta is not nilpotent, so ``max_degree`` bounds the
    expansion.
    """
    if not roots:
        raise RankError("a bundle needs at least one summand")
    ngens = roots[0].ngens
    series = ZetaPoly.one(ngens)
    for root in roots:
        if not root.is_homogeneous(1):
            raise ValueError(f"Chern root {root} is not homogeneous of total degree 1")
        neg = -root
        geometric = ZetaPoly.one(ngens)
        term = ZetaPoly.one(ngens)
        for _ in range(max_degree):
            term = term.mul(neg, max_degree)
            if term.is_zero():
                break
            geometric = geometric + term
        series = series.mul(geometric, max_degree)
    return [series.graded_part(t) for t in range(max_degree + 1)]


def segre_e2_xrsa(gamma, max_degree: int) -> list[ZetaPoly]:
    """Segre pieces of the second bundle in the quasimap tower for X_{r,s,a}.

    ``c(E_2) = (1 - H_0 - a*zeta_1) (1 - H_{r+2}) ... (1 - H_{r+s+1})`` with
    zeta_1 the hyperplane class of the first projective bundle.
    """
    from .gamma import validate_xrsa

    validate_xrsa(gamma)
    ngens, _, H = base_classes(gamma.mu)
    r, s = gamma.r, gamma.s
    twisted = -(ZetaPoly.from_nil(H[0]) + ZetaPoly.zeta(ngens, 1, gamma.a))
    roots = [twisted] + [ZetaPoly.from_nil(-H[j]) for j in range(r + 2, r + s + 2)]
    return segre_series_zeta(roots, max_degree)


def pushforward_zeta(p: ZetaPoly, bundle: BundleData) -> NilPoly:
    """Push a class on ``P(E)`` down to the base: ``zeta^(rank-1+t) -> S_t(E)``."""
    ngens = p.ngens
    if bundle.ngens != ngens:
        raise ContextError("class and bundle live over different bases")
    out = NilPoly.zero(ngens)
    for u, c in enumerate(p.coeffs):
        t = u - (bundle.rank - 1)
        if t < 0 or c.is_zero():
            continue
        if t > bundle.max_degree and t + c.min_degree() > ngens:
            # S_t * c has degree above the base dimension
            continue
        out = nilring.add(out, nilring.mul(c, bundle.segre_class(t)))
    return out


def segre_factors(roots: Sequence[NilPoly], max_degree: int | None = None) -> list[NilPoly]:
    """``[1 / (1 + root) for root in roots]``; their product is the total Segre class."""
    if not roots:
        raise RankError("a bundle needs at least one summand")
    out = []
    for root in roots:
        if not root.is_homogeneous(1):
            raise ValueError(f"Chern root {root} is not homogeneous of degree 1")
        out.append(nilring.linear_power(root, -1, max_degree=max_degree))
    return out


def collapse_zeta(p: ZetaPoly, rank: int) -> NilPoly:
    """Base class ``C`` with ``top(pushforward_zeta(p, E)) == top(C * S(E))`` for rank-``rank`` E.

    ``p`` must be homogeneous of total degree ``M + rank - 1`` (a top-degree
    class on P(E)).  Then the coefficient of ``zeta^u`` has base degree
    ``M - (u - rank + 1)`` and pairs to the top only with ``S_{u-rank+1}``, so
    the graded bookkeeping of the push-forward is automatic and
    ``C = sum_{u >= rank-1} coeff(zeta^u)``.
    """
    ngens = p.ngens
    if not p.is_homogeneous(ngens + rank - 1):
        raise ValueError(f"class is not homogeneous of total degree {ngens + rank - 1}")
    out = NilPoly.zero(ngens)
    for u, c in enumerate(p.coeffs):
        if u >= rank - 1:
            out = nilring.add(out, c)
    return out
