"""Conic domains and the coefficients of their disk maps.

The domain with aperture k >= 0 and order alpha in [0, 1) is

    Omega(k, alpha) = { w : Re w > k*|w - 1| + alpha },

a conic-section-bounded region inside the right half plane, symmetric
about the real axis.  Membership tests use the strict inequality; the
signed margin Re w - k*|w-1| - alpha is exposed separately for
diagnostics, so a boundary point reports False together with margin 0.

The normalized disk map onto Omega(k, alpha) has real positive Taylor
coefficients 1 + P1 z + P2 z^2 + ....  Closed forms are built in for the
two classical regimes only:

    k = 0  (half plane (1 + (1-2a)z)/(1-z)):  Pn = 2(1 - alpha)
    k = 1  (parabola):  P1 = 8(1-alpha)/pi^2, P2 = 16(1-alpha)/(3 pi^2),
                        P3 = 184(1-alpha)/(45 pi^2)

The parabolic values come from expanding (2/pi^2) * log((1+sqrt z)/(1-sqrt z))**2,
scaled by (1 - alpha) for consistency with the half-plane pattern.  For
any other k the trigonometric / elliptic disk maps are deliberately not
constructed here; callers must inject coefficients, and the verification
ledger marks everything downstream of injected values as reconstructed
input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qcalc import validate_q

PROVENANCE_BUILTIN_K0 = "builtin-k0"
PROVENANCE_BUILTIN_K1 = "builtin-k1"
PROVENANCE_USER = "user"


class UnsupportedConicRegimeError(ValueError):
    """No built-in coefficients for this k and none supplied by the user."""


@dataclass(frozen=True)
class ClassParams:
    """The triple (q, k, alpha) selecting one function class."""

    q: float
    k: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "q", validate_q(self.q))
        k = float(self.k)
        if not (k >= 0.0 and math.isfinite(k)):
            raise ValueError(f"k must be a finite nonnegative real, got {self.k}")
        object.__setattr__(self, "k", k)
        alpha = float(self.alpha)
        if not 0.0 <= alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class ConicCoefficients:
    """First three Taylor coefficients of the disk map onto Omega(k, alpha)."""

    P1: float
    P2: float
    P3: float
    provenance: str = PROVENANCE_USER

    def __post_init__(self):
        if not self.P1 > 0.0:
            raise ValueError(f"P1 must be positive, got {self.P1}")
        if self.P2 < 0.0 or self.P3 < 0.0:
            raise ValueError(f"P2 and P3 must be nonnegative, got {self.P2}, {self.P3}")
        if self.provenance not in (PROVENANCE_BUILTIN_K0, PROVENANCE_BUILTIN_K1, PROVENANCE_USER):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def is_reconstructed(self) -> bool:
        """True unless derived from the forced half-plane map (k = 0)."""
        return self.provenance != PROVENANCE_BUILTIN_K0


def conic_margin(w: complex, k: float, alpha: float) -> float:
    """Signed margin Re w - k*|w - 1| - alpha; positive means inside."""
    w = complex(w)
    return w.real - k * abs(w - 1.0) - alpha


def in_conic_domain(w: complex, k: float, alpha: float) -> bool:
    """Strict membership test Re w > k*|w - 1| + alpha."""
    if k < 0.0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    return conic_margin(w, k, alpha) > 0.0


def conic_coefficients(
    k: float, alpha: float, user: ConicCoefficients | None = None
) -> ConicCoefficients:
    """Resolve (P1, P2, P3) for the regime (k, alpha).

    Built-ins exist for k = 0 and k = 1; any other k echoes the user
    coefficients after invariant validation and raises
    UnsupportedConicRegimeError when none are given.
    """
    if k < 0.0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if user is not None:
        return ConicCoefficients(user.P1, user.P2, user.P3, provenance=PROVENANCE_USER)
    if k == 0.0:
        c = 2.0 * (1.0 - alpha)
        return ConicCoefficients(c, c, c, provenance=PROVENANCE_BUILTIN_K0)
    if k == 1.0:
        s = (1.0 - alpha) / math.pi**2
        return ConicCoefficients(8.0 * s, 16.0 * s / 3.0, 184.0 * s / 45.0,
                                 provenance=PROVENANCE_BUILTIN_K1)
    raise UnsupportedConicRegimeError(
        f"no built-in disk-map coefficients for k={k}; supply P1, P2, P3 explicitly"
    )


def conic_map_reference(z: complex, k: float, alpha: float) -> complex:
    """Reference value of the disk map at z for the built-in regimes.

    k = 0 evaluates the exact half-plane map; k = 1 evaluates the cubic
    Taylor truncation 1 + P1 z + P2 z^2 + P3 z^3 (good to ~1e-3 margin at
    radius 0.9).  Used by sampled sanity checks, not by any bound.
    """
    if k == 0.0:
        return (1.0 + (1.0 - 2.0 * alpha) * z) / (1.0 - z)
    if k == 1.0:
        p = conic_coefficients(1.0, alpha)
        return 1.0 + z * (p.P1 + z * (p.P2 + z * p.P3))
    raise UnsupportedConicRegimeError(f"no reference map for k={k}")
