"""Problem parameters for the coupled system and the coupling-weight catalog.

The system couples two components through a weight ``nu * h(x)`` acting on
``|u|^alpha |v|^beta / |x|^s``.  Each component carries an inverse-square
potential ``lambda_j / |x|^2`` below the Hardy threshold and a critical
weighted nonlinearity ``|u|^{p-1} / |x|^s`` with ``p = 2(N-s)/(N-2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True)
class HProfile:
    """Radial coupling weight.

    Two families are supported:

    * ``constant``: ``h(r) = c`` with ``c > 0``.  Bounded but does not vanish
      at the origin or at infinity, so it is reserved for subcritical
      coupling exponents (``alpha + beta < p``).
    * ``bump``: ``h(r) = r^p_exp / (1 + r^(p_exp + q_exp))`` with
      ``p_exp, q_exp > 0``.  Continuous, bounded, and vanishing both at 0 and
      at infinity.
    """

    kind: str = "constant"
    c: float = 1.0
    p_exp: float = 2.0
    q_exp: float = 2.0

    def __post_init__(self):
        if self.kind not in ("constant", "bump"):
            raise InvalidParameterError(f"unknown h-profile kind: {self.kind!r}")
        if self.kind == "constant" and not self.c > 0:
            raise InvalidParameterError("constant h-profile requires c > 0")
        if self.kind == "bump" and not (self.p_exp > 0 and self.q_exp > 0):
            raise InvalidParameterError("bump h-profile requires p_exp, q_exp > 0")

    @property
    def vanishes_at_origin_and_infinity(self) -> bool:
        return self.kind == "bump"

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            return np.full_like(r, self.c)
        return r ** self.p_exp / (1.0 + r ** (self.p_exp + self.q_exp))

    def to_dict(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "c": self.c}
        return {"kind": "bump", "p_exp": self.p_exp, "q_exp": self.q_exp}

    @classmethod
    def from_dict(cls, d: dict) -> "HProfile":
        kind = d.get("kind", "constant")
        if kind == "constant":
            return cls(kind="constant", c=float(d.get("c", 1.0)))
        return cls(kind="bump", p_exp=float(d.get("p_exp", 2.0)), q_exp=float(d.get("q_exp", 2.0)))


@dataclass(frozen=True)
class ProblemParams:
    """Full parameter tuple of the coupled system.

    Invariants enforced on construction:

    * ``N >= 3`` integer dimension,
    * ``0 <= s < 2``,
    * ``0 < lambda_j < (N-2)^2/4`` for both components,
    * ``alpha, beta > 1`` with ``alpha + beta <= 2(N-s)/(N-2)``,
    * ``nu >= 0``.
    """

    N: int
    s: float
    lambda1: float
    lambda2: float
    alpha: float
    beta: float
    nu: float = 0.0
    h_profile: HProfile = field(default_factory=HProfile)

    def __post_init__(self):
        bad = []
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 3):
            bad.append("N")
        if not (0.0 <= self.s < 2.0):
            bad.append("s")
        if not bad:
            lam_max = (self.N - 2) ** 2 / 4.0
            if not (0.0 < self.lambda1 < lam_max):
                bad.append("lambda1")
            if not (0.0 < self.lambda2 < lam_max):
                bad.append("lambda2")
            p = 2.0 * (self.N - self.s) / (self.N - 2)
            if not self.alpha > 1.0:
                bad.append("alpha")
            if not self.beta > 1.0:
                bad.append("beta")
            if "alpha" not in bad and "beta" not in bad and self.alpha + self.beta > p * (1 + 1e-12):
                bad.append("alpha+beta")
        if not self.nu >= 0.0:
            bad.append("nu")
        if bad:
            raise InvalidParameterError(f"invalid problem parameters: {', '.join(bad)}")

    @property
    def hardy_threshold(self) -> float:
        return (self.N - 2) ** 2 / 4.0

    @property
    def crit_exp(self) -> float:
        """Critical exponent 2(N-s)/(N-2) of the weighted nonlinearity."""
        return 2.0 * (self.N - self.s) / (self.N - 2)

    @property
    def coupling_exponent(self) -> float:
        return self.alpha + self.beta

    @property
    def is_critical_coupling(self) -> bool:
        return abs(self.coupling_exponent - self.crit_exp) <= 1e-12 * self.crit_exp

    def swapped(self) -> "ProblemParams":
        """Parameters with the two components exchanged."""
        return ProblemParams(self.N, self.s, self.lambda2, self.lambda1,
                             self.beta, self.alpha, self.nu, self.h_profile)

    def to_dict(self) -> dict:
        return {
            "N": int(self.N), "s": self.s,
            "lambda1": self.lambda1, "lambda2": self.lambda2,
            "alpha": self.alpha, "beta": self.beta, "nu": self.nu,
            "h_profile": self.h_profile.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ProblemParams":
        return cls(
            N=int(d["N"]), s=float(d["s"]),
            lambda1=float(d["lambda1"]), lambda2=float(d["lambda2"]),
            alpha=float(d["alpha"]), beta=float(d["beta"]),
            nu=float(d.get("nu", 0.0)),
            h_profile=HProfile.from_dict(d.get("h_profile", {"kind": "constant", "c": 1.0})),
        )
