"""Tangency data for the two targets, validation, and the canonical document form.

For ``X_{r,s,a}`` the boundary divisors are indexed ``j = 0, ..., r+s+1``; the
partition ``mu[j]`` lists the contact orders with ``D_j``.  For the blow-up of
P^2 at two points the divisors are indexed ``j = 1, ..., 5`` and stored at
positions ``0, ..., 4`` of ``mu``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Mapping, Sequence

from .errors import (
    DegreeMismatch,
    Indivisible,
    NegativeTwist,
    NonPositivePart,
    ValidationError,
)

Partition = tuple[int, ...]


def _freeze(mu: Sequence[Sequence[int]]) -> tuple[Partition, ...]:
    return tuple(tuple(parts) for parts in mu)


@dataclass(frozen=True)
class GammaXrsa:
    r: int
    s: int
    a: int
    b: int
    c: int
    mu: tuple[Partition, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "mu", _freeze(self.mu))


@dataclass(frozen=True)
class GammaBlp2:
    d: int
    mu: tuple[Partition, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "mu", _freeze(self.mu))

    def part(self, j: int) -> Partition:
        """Partition for divisor ``D_j``, 1-based as in the fan labelling."""
        return self.mu[j - 1]


@dataclass(frozen=True)
class DerivedXrsa:
    m_parts: tuple[int, ...]
    m: int
    n: int
    k0: int

    @property
    def degenerate(self) -> bool:
        """True when n < 3: the integral is defined but has no enumerative meaning."""
        return self.n < 3


@dataclass(frozen=True)
class DerivedBlp2:
    m_parts: tuple[int, ...]
    m: int
    n: int

    @property
    def degenerate(self) -> bool:
        return self.n < 3

    def mj(self, j: int) -> int:
        return self.m_parts[j - 1]


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_parts(mu: Sequence[Partition], labels: Sequence[int]) -> None:
    if all(type(part) is int and part >= 1 for parts in mu for part in parts):
        return
    for j, parts in zip(labels, mu):
        for v, part in enumerate(parts, start=1):
            if not _is_int(part):
                raise ValidationError(f"mu[{j}][{v}] = {part!r} is not an integer")
            if part < 1:
                raise NonPositivePart(f"mu[{j}][{v}] = {part} is not positive")


def validate_xrsa(g: GammaXrsa) -> DerivedXrsa:
    for name in ("r", "s", "a", "b", "c"):
        if not _is_int(getattr(g, name)):
            raise ValidationError(f"{name} = {getattr(g, name)!r} is not an integer")
    if g.r < 1 or g.s < 1:
        raise ValidationError(f"need r, s >= 1, got r={g.r}, s={g.s}")
    if g.a < 0:
        raise ValidationError(f"need a >= 0, got a={g.a}")
    if g.b < 0:
        raise ValidationError(f"need b >= 0, got b={g.b}")
    size = g.r + g.s + 2
    if len(g.mu) != size:
        raise ValidationError(f"expected {size} partitions for r={g.r}, s={g.s}, got {len(g.mu)}")
    _check_parts(g.mu, range(size))
    if g.c < g.a * g.b:
        raise NegativeTwist(f"c = {g.c} < a*b = {g.a * g.b}")

    for j, parts in enumerate(g.mu):
        if j == 0:
            want, label = g.c - g.a * g.b, "c - a*b"
        elif j <= g.r + 1:
            want, label = g.b, "b"
        else:
            want, label = g.c, "c"
        if sum(parts) != want:
            raise DegreeMismatch(f"|mu[{j}]| = {sum(parts)}, expected {label} = {want}")

    m_parts = tuple(len(parts) for parts in g.mu)
    m = sum(m_parts)
    if m % (g.r + g.s):
        raise Indivisible(f"m = {m} is not divisible by r + s = {g.r + g.s}")
    n = m // (g.r + g.s) + 1
    k0 = g.s * (n - 1) - sum(m_parts[g.r + 2:])
    assert k0 == sum(m_parts[: g.r + 2]) - g.r * (n - 1)
    return DerivedXrsa(m_parts=m_parts, m=m, n=n, k0=k0)


def validate_blp2(g: GammaBlp2) -> DerivedBlp2:
    if not _is_int(g.d):
        raise ValidationError(f"d = {g.d!r} is not an integer")
    if g.d < 1:
        raise ValidationError(f"need d >= 1, got d={g.d}")
    if len(g.mu) != 5:
        raise ValidationError(f"expected 5 partitions, got {len(g.mu)}")
    _check_parts(g.mu, range(1, 6))
    e = [sum(parts) for parts in g.mu]
    # degrees of g_3, g_4, g_5 are exactly exhausted by their vanishing divisors
    checks = [
        ((0, 1, 2), "|mu_1| + |mu_2| + |mu_3|"),
        ((0, 3), "|mu_1| + |mu_4|"),
        ((1, 4), "|mu_2| + |mu_5|"),
    ]
    for idx, label in checks:
        total = sum(e[i] for i in idx)
        if total != g.d:
            raise DegreeMismatch(f"{label} = {total}, expected d = {g.d}")
    m_parts = tuple(len(parts) for parts in g.mu)
    m = sum(m_parts)
    if m % 2:
        raise Indivisible(f"m = {m} is odd")
    return DerivedBlp2(m_parts=m_parts, m=m, n=(m + 2) // 2)


def symmetry_factor(mu: Sequence[Sequence[int]]) -> int:
    """Product over divisors and contact orders u of (number of parts equal to u)!."""
    out = 1
    for parts in mu:
        for count in Counter(parts).values():
            out *= factorial(count)
    return out


# canonical document form

_XRSA_FIELDS = {"target", "r", "s", "a", "b", "c", "mu"}
_BLP2_FIELDS = {"target", "d", "mu"}


def gamma_from_document(doc: Mapping[str, Any]) -> GammaXrsa | GammaBlp2:
    """Parse and validate one canonical document.

    Field order is irrelevant; unknown or missing fields are rejected.
    """
    if not isinstance(doc, Mapping):
        raise ValidationError(f"expected an object, got {type(doc).__name__}")
    target = doc.get("target")
    if target == "xrsa":
        allowed = _XRSA_FIELDS
    elif target == "blp2":
        allowed = _BLP2_FIELDS
    else:
        raise ValidationError(f"target: expected 'xrsa' or 'blp2', got {target!r}")
    unknown = set(doc) - allowed
    if unknown:
        raise ValidationError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = allowed - set(doc)
    if missing:
        raise ValidationError(f"missing field(s): {', '.join(sorted(missing))}")
    for name in allowed - {"target", "mu"}:
        if not _is_int(doc[name]):
            raise ValidationError(f"{name}: expected an integer, got {doc[name]!r}")
    mu = doc["mu"]
    if not isinstance(mu, list) or not all(isinstance(p, list) for p in mu):
        raise ValidationError("mu: expected a list of lists of positive integers")

    if target == "xrsa":
        g = GammaXrsa(r=doc["r"], s=doc["s"], a=doc["a"], b=doc["b"], c=doc["c"], mu=mu)
        validate_xrsa(g)
    else:
        g = GammaBlp2(d=doc["d"], mu=mu)
        validate_blp2(g)
    return g


def gamma_to_document(g: GammaXrsa | GammaBlp2) -> dict[str, Any]:
    mu = [list(parts) for parts in g.mu]
    if isinstance(g, GammaXrsa):
        return {"target": "xrsa", "r": g.r, "s": g.s, "a": g.a, "b": g.b, "c": g.c, "mu": mu}
    return {"target": "blp2", "d": g.d, "mu": mu}
