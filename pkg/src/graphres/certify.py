"""Entanglement, Bell-correlation and metrology certificates derived from gamma."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from graphres.errors import DomainError

REPORT_FIELDS = (
    "L", "E", "gamma", "entangled", "bell_correlated", "entanglement_depth",
    "bell_depth", "qfi_lower_bound", "sub_shot_noise",
    "entanglement_margin", "bell_margin", "separable",
)


@dataclass(frozen=True)
class ResourceReport:
    """Certified resources of an L-qubit state with correlator exponent ``gamma``.

    The margins are E - 4^-L and E - 2^-L; a positive margin violates the
    separable or local-realistic bound respectively.
    """

    L: int
    E: float
    gamma: float
    entangled: bool
    bell_correlated: bool
    entanglement_depth: int
    bell_depth: int
    qfi_lower_bound: float
    sub_shot_noise: bool
    entanglement_margin: float
    bell_margin: float
    separable: bool

    @property
    def phase_variance_bound(self) -> float:
        """Upper bound 1/F on the attainable phase variance."""
        return 1.0 / self.qfi_lower_bound

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> ResourceReport:
        missing = [f for f in REPORT_FIELDS if f not in data]
        if missing:
            raise DomainError(f"report is missing fields {missing}")
        return cls(**{f: data[f] for f in REPORT_FIELDS})

    def to_text(self) -> str:
        rows = [
            ("L", str(self.L)),
            ("E", f"{self.E:.6g}"),
            ("gamma", _fmt(self.gamma)),
            ("entangled", _yn(self.entangled)),
            ("bell_correlated", _yn(self.bell_correlated)),
            ("entanglement_depth", str(self.entanglement_depth) + (" (separable)" if self.separable else "")),
            ("bell_depth", str(self.bell_depth)),
            ("qfi_lower_bound", _fmt(self.qfi_lower_bound)),
            ("sub_shot_noise", _yn(self.sub_shot_noise)),
            ("entanglement_margin", f"{self.entanglement_margin:.6g}"),
            ("bell_margin", f"{self.bell_margin:.6g}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:.6g}"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def metrology_threshold(L: int) -> float:
    """log_4 L; gamma strictly below it certifies sub-shot-noise sensitivity."""
    if L < 2:
        raise DomainError(f"L must be >= 2, got {L}")
    return math.log2(L) / 2


def certify(gamma: float, L: int) -> ResourceReport:
    """Turn the exponent of an L-qubit state into certified statements."""
    if L < 2:
        raise DomainError(f"L must be >= 2, got {L}")
    if gamma is None or math.isnan(gamma) or math.isinf(gamma):
        raise DomainError(f"gamma must be finite, got {gamma}")
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")

    E = 4.0 ** (-(1.0 + gamma))
    nu_ent = math.floor(gamma)
    nu_bell = math.floor(2 * gamma)
    separable = gamma >= L - 1
    return ResourceReport(
        L=L,
        E=E,
        gamma=float(gamma),
        entangled=gamma < L - 1,
        bell_correlated=gamma < L / 2 - 1,
        entanglement_depth=1 if separable else max(1, L - nu_ent),
        bell_depth=max(0, L - nu_bell),
        qfi_lower_bound=L * L * 4.0 ** (-gamma),
        sub_shot_noise=gamma < metrology_threshold(L),
        entanglement_margin=E - 4.0 ** (-L),
        bell_margin=E - 2.0 ** (-L),
        separable=separable,
    )
