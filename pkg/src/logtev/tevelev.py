"""Logarithmic Tevelev degrees of X_{r,s,a} = P_{P^r}(O^s + O(-a)).

Two routes to the same intersection number:

* :func:`symbolic_integral_xrsa` expands the Segre series of the quasimap
  tower and extracts the coefficient of the top monomial on the base;
* :func:`closed_formula_xrsa` evaluates the product formula.

:func:`integral_xrsa` runs both and refuses to return if they differ.
:func:`logtev_xrsa` adds the inequality gates that decide whether the
intersection number is the actual count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Any, Sequence

from . import nilring
from .errors import CrossCheckError, ValidationError
from .gamma import DerivedXrsa, GammaXrsa, validate_xrsa
from .tower import base_classes, pushforward_zeta, segre_e2_xrsa, segre_from_roots

__all__ = [
    "Status",
    "Inequality",
    "TevReport",
    "binom",
    "closed_formula_xrsa",
    "symbolic_integral_xrsa",
    "integral_xrsa",
    "xrsa_inequalities",
    "logtev_xrsa",
    "logtev_projective",
    "bl_linear_gamma",
    "tev_blowup_linear",
    "tev_hirzebruch",
]


class Status(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    CERTIFIED_ZERO = "CERTIFIED_ZERO"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class Inequality:
    label: str
    group: int
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class TevReport:
    integral: int
    closed_value: int
    logtev: int | None
    status: Status
    diagnostics: dict[str, Any] = field(default_factory=dict, compare=False)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _multiplicity_product(mu: Sequence[Sequence[int]]) -> int:
    return prod(factorial(len(parts)) for parts in mu) * prod(p for parts in mu for p in parts)


def closed_formula_xrsa(g: GammaXrsa) -> int:
    """``(prod m_j!)(prod mu_{j,v}) a^(k0 - m0) C(k0, m0)``, or 0 when m0 > k0.

    With a = 0 the power is read with ``0^0 = 1``.
    """
    d = validate_xrsa(g)
    m0, k0 = d.m_parts[0], d.k0
    if k0 < m0:
        return 0
    return _multiplicity_product(g.mu) * g.a ** (k0 - m0) * comb(k0, m0)


def symbolic_integral_xrsa(g: GammaXrsa) -> int:
    """Integral of ``prod_i [V(p_i, x_i)] = (zeta_1^r zeta_2^s)^n`` over the quasimap space.

    Push ``zeta_2^(sn)`` down to ``S_{s(n-1)}(E_2)``, multiply by ``zeta_1^(rn)``,
    push down to the base with ``S(E_1) = 1/prod_{j=1}^{r+1}(1 - H_j)``, and read
    off the coefficient of the product of all base generators.
    """
    d = validate_xrsa(g)
    r, s, n = g.r, g.s, d.n
    ngens, _, H = base_classes(g.mu)
    e2_degree = s * (n - 1)
    piece = segre_e2_xrsa(g, e2_degree)[e2_degree]
    integrand = piece.shift(r * n)
    e1 = segre_from_roots(
        [-H[j] for j in range(1, r + 2)],
        min(ngens, r * (n - 1) + max(piece.zeta_degree(), 0)),
    )
    return nilring.top_coefficient(pushforward_zeta(integrand, e1))


def integral_xrsa(g: GammaXrsa) -> int:
    value = symbolic_integral_xrsa(g)
    expected = closed_formula_xrsa(g)
    if value != expected:
        raise CrossCheckError(f"integral {value} != closed formula {expected} for {g}")
    return value


def xrsa_inequalities(g: GammaXrsa, d: DerivedXrsa | None = None) -> list[Inequality]:
    """The three inequality groups gating enumerativity.

    Groups 1 and 2 are necessary for a nonzero count; group 3 is ``k0 >= m0``.
    """
    if d is None:
        d = validate_xrsa(g)
    r, s, n, m = g.r, g.s, d.n, d.m_parts
    out = [
        Inequality(f"m_{j} <= n-1", 1, m[j], n - 1, m[j] <= n - 1)
        for j in range(1, r + s + 2)
    ]
    fiber = sum(m[r + 2:])
    span = f"m_{r+2}" if s == 1 else f"m_{r+2}+...+m_{r+s+1}"
    out.append(Inequality(
        f"{span} >= (s-1)(n-1)", 2, fiber, (s - 1) * (n - 1),
        fiber >= (s - 1) * (n - 1),
    ))
    out.append(Inequality(
        f"m_0+{span} <= s(n-1)", 3, m[0] + fiber, s * (n - 1),
        m[0] + fiber <= s * (n - 1),
    ))
    return out


def logtev_xrsa(g: GammaXrsa) -> TevReport:
    d = validate_xrsa(g)
    integral = integral_xrsa(g)
    closed = closed_formula_xrsa(g)
    ineqs = xrsa_inequalities(g, d)
    failed = [q for q in ineqs if not q.holds]
    _, layout, _ = base_classes(g.mu)
    diagnostics: dict[str, Any] = {
        "m": d.m,
        "n": d.n,
        "k0": d.k0,
        "m_parts": list(d.m_parts),
        "inequalities": [
            {"label": q.label, "group": q.group, "lhs": q.lhs, "rhs": q.rhs, "holds": q.holds}
            for q in ineqs
        ],
        "failed": [q.label for q in failed],
        "generator_layout": layout,
    }
    if d.degenerate:
        diagnostics["note"] = "n < 3: intersection number only, no enumerative meaning"
        return TevReport(integral, closed, None, Status.DEGENERATE, diagnostics)
    if any(q.group in (1, 2) for q in failed):
        diagnostics["note"] = "a necessary inequality fails, so no map exists"
        return TevReport(integral, closed, 0, Status.CERTIFIED_ZERO, diagnostics)
    if failed:
        # only k0 >= m0 fails: the count is zero and the integral vanishes with it
        diagnostics["note"] = "k0 < m0: count is zero and the integral vanishes"
    return TevReport(integral, closed, integral, Status.CERTIFIED, diagnostics)


def logtev_projective(mu: Sequence[Sequence[int]]) -> int:
    """Standalone formula for P^r with partitions ``mu_1, ..., mu_{r+1}``: prod m_j! prod mu."""
    return _multiplicity_product(mu)


def bl_linear_gamma(r: int, s: int, d: int, k: int) -> GammaXrsa:
    """All-ones tangency data on X_{r,s,1} = Bl_{P^{s-1}} P^{r+s} with c = d, b = d - k."""
    if k < 0 or d < k:
        raise ValidationError(f"need 0 <= k <= d, got d={d}, k={k}")
    b = d - k
    mu = [(1,) * k] + [(1,) * b] * (r + 1) + [(1,) * d] * s
    g = GammaXrsa(r=r, s=s, a=1, b=b, c=d, mu=mu)
    validate_xrsa(g)
    return g


def tev_blowup_linear(r: int, s: int, n: int, d: int, k: int, check: bool = True) -> int:
    """Tevelev degree of Bl_{P^{s-1}} P^{r+s} for degree d meeting the exceptional divisor k times.

    Returns ``C(s(n-d-1), k)``.  With ``check`` the value is compared against the
    closed formula on the all-ones tangency data, divided by the orderings of
    boundary points.
    """
    value = binom(s * (n - d - 1), k)
    if check:
        g = bl_linear_gamma(r, s, d, k)
        derived = validate_xrsa(g)
        if derived.n != n:
            raise ValidationError(f"r={r}, s={s}, d={d}, k={k} forces n={derived.n}, not {n}")
        orderings = prod(factorial(mj) for mj in derived.m_parts)
        other = closed_formula_xrsa(g)
        if other != value * orderings:
            raise CrossCheckError(f"{other} != {value} * {orderings}")
    return value


def tev_hirzebruch(g: GammaXrsa) -> int | None:
    """logTev of a Hirzebruch surface (r = s = 1); None when n < 3."""
    if g.r != 1 or g.s != 1:
        raise ValidationError(f"Hirzebruch surfaces need r = s = 1, got r={g.r}, s={g.s}")
    return logtev_xrsa(g).logtev
