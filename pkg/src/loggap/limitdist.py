"""Exact limiting gap distributions for logarithmic sequences.

For a base b > 1 with q = 1/b the raw scaled-gap law P(s) is piecewise

    P(s) = (F(s*ln b) - F(s*q*ln b)) / (ln b * s^2)   on (0, 1/ln b)
         = -F(s*q*ln b) / (ln b * s^2)                on (1/ln b, b/ln b)
         = 0                                          beyond b/ln b

with F(a) = a * d/da (a;q) - (a;q).  Transcendental bases use the infinite
symbol; integer bases (order 1) and integer-root bases b = m**(1/r)
(order r) use the finite symbol and gain an atom of mass 1/m at s = 0.
The rescaled law is P~(s) = (1-q)^2 * R((1-q)s) with R the mixed density
carrying an atom at a = 1 and the second symbol derivative on (0, 1).

CDFs are closed-form: d/ds [-F(c*s)/s + c*(d/da symbol)(c*s)] = F(c*s)/s^2
for any constant c, so every branch has an explicit antiderivative.
"""

import math

import numpy as np

from . import qpoch, superposition
from ._density import MixedDensity, Piece
from .sequence import LogBase

__all__ = [
    "MixedDensity",
    "Piece",
    "rho",
    "limit_R",
    "limit_gap_density",
    "rescaled_limit_density",
    "limit_joint_density",
    "joint_atoms",
    "family_E",
    "family_E_vector",
    "cdf",
    "theory_for",
]

_BELOW_ONE = float(np.nextafter(1.0, 0.0))


class _SymbolOps:
    """Uniform access to the infinite (order None) or finite (order r)
    symbol family at q = 1/b."""

    def __init__(self, q: float, order: int | None, eps: float):
        self.q = q
        self.order = order
        self.eps = eps
        if order is None:
            self.end_coeff = qpoch.qpoch_inf(q, q, eps)
        else:
            self.end_coeff = qpoch.qpoch_fin(q, q, order - 1)

    def pochhammer(self, a: float) -> float:
        if self.order is None:
            return qpoch.qpoch_inf(a, self.q, self.eps)
        return qpoch.qpoch_fin(a, self.q, self.order)

    def deriv(self, a: float) -> float:
        if self.order is None:
            return qpoch.dqpoch_inf(a, self.q, self.eps)
        return qpoch.dqpoch_fin(a, self.q, self.order)

    def deriv2(self, a: float) -> float:
        if self.order is None:
            return qpoch.d2qpoch_inf(a, self.q, self.eps)
        return qpoch.d2qpoch_fin(a, self.q, self.order)

    def f(self, a: float) -> float:
        if self.order is None:
            return qpoch.F_inf(a, self.q, self.eps)
        return qpoch.F_fin(a, self.q, self.order)

    def f_plus1(self, a: float) -> float:
        if self.order is None:
            return qpoch.F_inf_plus1(a, self.q, self.eps)
        return qpoch.F_fin_plus1(a, self.q, self.order)


def _ops_for(base: LogBase, eps: float) -> _SymbolOps:
    return _SymbolOps(1.0 / base.b, base.finite_order, eps)


def _zero_atom_mass(base: LogBase) -> float:
    """Mass b**(-r) = 1/m of the s = 0 atom; 0 for transcendental bases."""
    return 0.0 if base.finite_order is None else 1.0 / base.m


def rho(x, b: float):
    """Limit density (ln b / (b-1)) * b^x of the shifted sequence on [0, 1]."""
    if not b > 1.0:
        raise ValueError(f"base must satisfy b > 1, got {b}")
    return (math.log(b) / (b - 1.0)) * b**x


def limit_R(base: LogBase, eps: float = qpoch.DEFAULT_EPS) -> MixedDensity:
    """The mixed density R(a): an atom at a = 1 (coefficient (q;q) or its
    finite analogue) plus the second symbol derivative on (0, 1), zero for
    a > 1.  Integrates to (1 - 1/m)/(1 - q), or 1/(1 - q) for
    transcendental bases."""
    ops = _ops_for(base, eps)
    q = 1.0 / base.b
    if base.finite_order is None:
        total = 1.0 / (1.0 - q)
    else:
        total = (1.0 - 1.0 / base.m) / (1.0 - q)
    d0 = ops.deriv(0.0)

    def pdf(a: float) -> float:
        return ops.deriv2(min(a, _BELOW_ONE))

    def cdf_fn(a: float) -> float:
        if a < 0.0:
            return 0.0
        if a >= 1.0:
            return total
        return ops.deriv(a) - d0

    pieces = () if base.finite_order == 1 else (Piece(0.0, 1.0, pdf),)
    return MixedDensity(
        atoms=((1.0, ops.end_coeff),),
        pieces=pieces,
        total_mass=total,
        cdf_fn=cdf_fn,
        label=f"R[{base.describe()}]",
    )


def limit_gap_density(base: LogBase, eps: float = qpoch.DEFAULT_EPS) -> MixedDensity:
    """Limiting distribution of the raw scaled gaps (probability density).

    Piecewise continuous on (0, 1/ln b) and (1/ln b, b/ln b) with jump
    discontinuities at the break points; integer and root bases add an
    atom of mass 1/m at s = 0.  The CDF is closed-form.
    """
    ops = _ops_for(base, eps)
    b = base.b
    lnb = base.ln_b
    beta = lnb / b
    s_knee = 1.0 / lnb
    s_end = b / lnb
    atom0 = _zero_atom_mass(base)

    def pdf_low(s: float) -> float:
        if s == 0.0:  # right limit: F(a)+1 ~ (a^2/2) d2(0) gives this value
            return 0.5 * lnb * (1.0 - 1.0 / (b * b)) * ops.deriv2(0.0)
        a1 = min(lnb * s, 1.0)
        a2 = min(beta * s, 1.0)
        return (ops.f_plus1(a1) - ops.f_plus1(a2)) / (lnb * s * s)

    def pdf_high(s: float) -> float:
        a2 = min(beta * s, 1.0)
        return -ops.f(a2) / (lnb * s * s)

    def antideriv_low(s: float) -> float:
        a1 = min(lnb * s, 1.0)
        a2 = min(beta * s, 1.0)
        return (
            -(ops.f_plus1(a1) - ops.f_plus1(a2)) / (s * lnb)
            + ops.deriv(a1)
            - ops.deriv(a2) / b
        )

    def antideriv_high(s: float) -> float:
        a2 = min(beta * s, 1.0)
        return ops.f(a2) / (s * lnb) - ops.deriv(a2) / b

    cdf_knee = antideriv_low(s_knee) + 1.0
    high_knee = antideriv_high(s_knee)

    def cdf_fn(s: float) -> float:
        if s < 0.0:
            return 0.0
        if s == 0.0:
            return atom0
        if s <= s_knee:
            return antideriv_low(s) + 1.0
        if s < s_end:
            return cdf_knee + antideriv_high(s) - high_knee
        return 1.0

    pieces = []
    if base.finite_order != 1:  # low piece is identically zero for integers
        pieces.append(Piece(0.0, s_knee, pdf_low))
    pieces.append(Piece(s_knee, s_end, pdf_high))
    atoms = ((0.0, atom0),) if atom0 else ()
    return MixedDensity(
        atoms=atoms,
        pieces=tuple(pieces),
        total_mass=1.0,
        cdf_fn=cdf_fn,
        label=f"P[{base.describe()}]",
    )


def rescaled_limit_density(
    base: LogBase, eps: float = qpoch.DEFAULT_EPS
) -> MixedDensity:
    """Limiting distribution of the unfolded scaled gaps (probability).

    Continuous part (1-q)^2 * (d2/da2 symbol)((1-q)s) on (0, (1-q)^{-1}),
    an atom of mass (1-q) * end coefficient at the right endpoint, and for
    integer/root bases the atom of mass 1/m at s = 0.  Integer bases are
    purely atomic.
    """
    ops = _ops_for(base, eps)
    q = 1.0 / base.b
    c = 1.0 - q
    s_end = 1.0 / c
    atom0 = _zero_atom_mass(base)
    d0 = ops.deriv(0.0)

    def pdf(s: float) -> float:
        return c * c * ops.deriv2(min(c * s, _BELOW_ONE))

    def cdf_fn(s: float) -> float:
        if s < 0.0:
            return 0.0
        if s >= s_end:
            return 1.0
        if s == 0.0:
            return atom0
        return atom0 + c * (ops.deriv(min(c * s, 1.0)) - d0)

    atoms = []
    if atom0:
        atoms.append((0.0, atom0))
    atoms.append((s_end, c * ops.end_coeff))
    pieces = () if base.finite_order == 1 else (Piece(0.0, s_end, pdf),)
    return MixedDensity(
        atoms=tuple(atoms),
        pieces=pieces,
        total_mass=1.0,
        cdf_fn=cdf_fn,
        label=f"Ptilde[{base.describe()}]",
    )


def limit_joint_density(
    x: float, s: float, base: LogBase, eps: float = qpoch.DEFAULT_EPS
) -> float:
    """Continuous part of the joint (position, scaled gap) limit density:
    (b^(x-1) ln b)^2 * R(s * b^(x-1) ln b) for x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    ops = _ops_for(base, eps)
    scale = base.b ** (x - 1.0) * base.ln_b
    a = s * scale
    if 0.0 < a < 1.0:
        return scale * scale * ops.deriv2(a)
    return 0.0


def joint_atoms(
    x: float, base: LogBase, eps: float = qpoch.DEFAULT_EPS
) -> tuple[tuple[float, float], ...]:
    """Atoms of the joint density at fixed x: the induced atom at
    s = b^(1-x)/ln b, plus the s = 0 atom for integer/root bases with
    x-dependent mass (ln b/(b-1)) * b^x / m."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    ops = _ops_for(base, eps)
    scale = base.b ** (x - 1.0) * base.ln_b
    out = []
    if base.finite_order is not None:
        out.append((0.0, rho(x, base.b) / base.m))
    out.append((1.0 / scale, scale * ops.end_coeff))
    return tuple(out)


def family_E_vector(
    b: float,
    k_max: int,
    L: float,
    J: int | None = None,
    tol: float = 1e-10,
) -> np.ndarray:
    """[E(0, L), ..., E(k_max, L)] for the frequency family
    omega_j = (b-1) * b^(-j), j = 1..J, with J raised by doubling until
    the vector moves by less than tol."""
    if not b > 1.0:
        raise ValueError(f"family base must satisfy b > 1, got {b}")
    if L < 0 or k_max < 0:
        raise ValueError("k_max and L must be >= 0")
    if J is None:
        J = min(max(int(math.ceil(math.log(1e-10) / math.log(1.0 / b))), 1), 2000)
    J = max(int(J), 1)

    def value(j_count: int) -> np.ndarray:
        js = np.arange(1, j_count + 1, dtype=np.float64)
        omegas = (b - 1.0) * (1.0 / b) ** js
        return superposition.E_conv_vector(k_max, L, omegas)

    v = value(J)
    while J < 2**21:
        J *= 2
        v_next = value(J)
        done = np.max(np.abs(v_next - v)) < tol
        v = v_next
        if done:
            break
    return v


def family_E(
    b: float,
    k: int,
    L: float,
    J: int | None = None,
    tol: float = 1e-10,
) -> float:
    """Probability that a random length-L window holds exactly k points of
    the limiting process for base b (Poisson with mean L as b -> 1; the
    shifted unit lattice as b -> infinity)."""
    return float(family_E_vector(b, k, L, J=J, tol=tol)[k])


def cdf(dist: MixedDensity, s: float) -> float:
    """Right-continuous CDF of a mixed density at s, atoms included."""
    return dist.cdf(s)


def theory_for(base: LogBase, what: str, eps: float = qpoch.DEFAULT_EPS) -> MixedDensity:
    """The 'raw' or 'rescaled' limit law for a base."""
    if what == "raw":
        return limit_gap_density(base, eps)
    if what == "rescaled":
        return rescaled_limit_density(base, eps)
    raise ValueError(f"unknown theory kind {what!r}")
