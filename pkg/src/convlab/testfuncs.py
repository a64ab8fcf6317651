"""Bounded Lipschitz test functions used by the distributional checkers.

Every function carries its sup bound and Lipschitz constant so dominance
checks can be stated without re-deriving them.  All of them accept numpy
arrays as well as scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class TestFunction:
    name: str
    bound: float
    lipschitz: float

    def __call__(self, x):
        raise NotImplementedError


@dataclass(frozen=True)
class Sine(TestFunction):
    name: str = "sine"
    bound: float = 1.0
    lipschitz: float = 1.0

    def __call__(self, x):
        return np.sin(x)


@dataclass(frozen=True)
class ClampedIdentity(TestFunction):
    """Identity on [-(M+eps), M+eps], clamped outside.

    This is the truncation function used in the converse direction of the
    truncated-first-moment criterion: it agrees with the identity on the
    whole range of a variable bounded by M, even after a perturbation of
    size eps.
    """

    M: float = 1.0
    eps: float = 1.0
    name: str = ""
    bound: float = 0.0
    lipschitz: float = 1.0

    def __post_init__(self):
        if self.M <= 0 or self.eps <= 0:
            raise ParameterError("ClampedIdentity needs M > 0 and eps > 0")
        object.__setattr__(self, "bound", self.M + self.eps)
        object.__setattr__(self, "name", f"clamped_identity(M={self.M},eps={self.eps})")

    def __call__(self, x):
        c = self.M + self.eps
        return np.clip(x, -c, c)


@dataclass(frozen=True)
class ClampedAffine(TestFunction):
    """K*(x - x0), clamped to [-M, M]."""

    K: float = 2.0
    M: float = 10.0
    x0: float = 0.5
    name: str = ""
    bound: float = 0.0
    lipschitz: float = 0.0

    def __post_init__(self):
        if self.K <= 0 or self.M <= 0:
            raise ParameterError("ClampedAffine needs K > 0 and M > 0")
        object.__setattr__(self, "bound", self.M)
        object.__setattr__(self, "lipschitz", self.K)
        object.__setattr__(
            self, "name", f"clamped_affine(K={self.K},M={self.M},x0={self.x0})"
        )

    def __call__(self, x):
        return np.clip(self.K * (np.asarray(x, dtype=float) - self.x0), -self.M, self.M)
