"""Decision and witness-check reports."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..const import DECISION_NO, DECISION_YES
from ..utils.linalg import linf
from .algebra import Element
from .base import SerializableMixin, encode_value


@dataclass(frozen=True, eq=False)
class DecisionReport(SerializableMixin):
    """Outcome of a yes/no decision procedure with its witness.

    ``decision == "yes"`` exactly when a witness is present and every
    residual is within ``tol``.

    Attributes:
        decision: ``"yes"`` or ``"no"``.
        witness: The witness element for a yes decision.
        residuals: Defect of each defining constraint at the witness (or at
            the best least-squares candidate for a no decision).
        phi: Label of the character the question is about.
        convention: Dual-action convention, φ-amenability only.
        affine_dim: Dimension of the affine solution space when known.
        notes: Free-form remarks (single-character case, vacuous kernel, ...).
        tol: Threshold the residuals were compared with.
        form_residuals: Def-form defects ``psi(a u) - psi(a)`` on kernel
            basis vectors, when computed.
    """

    decision: str
    witness: Optional[Element] = None
    residuals: tuple[float, ...] = ()
    phi: Optional[str] = None
    convention: Optional[str] = None
    affine_dim: Optional[int] = None
    notes: tuple[str, ...] = ()
    tol: float = 0.0
    form_residuals: tuple[float, ...] = ()

    @property
    def is_yes(self) -> bool:
        return self.decision == DECISION_YES

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def witness_l1(self) -> Optional[float]:
        return None if self.witness is None else self.witness.l1_norm

    def to_dict(self) -> Dict[str, Any]:
        return {
            "decision": self.decision,
            "witness": None if self.witness is None else encode_value(self.witness.coeffs),
            "witness_l1": self.witness_l1,
            "residuals": [float(r) for r in self.residuals],
            "form_residuals": [float(r) for r in self.form_residuals],
            "convention": self.convention,
            "phi": self.phi,
            "affine_dim": self.affine_dim,
            "notes": list(self.notes),
            "tol": self.tol,
        }


def decide(
    witness: Optional[Element],
    residuals: list[float],
    tol: float,
    **extra: Any,
) -> DecisionReport:
    """Build a report whose decision follows from the witness and residuals."""
    ok = witness is not None and linf(residuals) <= tol
    return DecisionReport(
        decision=DECISION_YES if ok else DECISION_NO,
        witness=witness if ok else None,
        residuals=tuple(float(r) for r in residuals),
        tol=tol,
        **extra,
    )


@dataclass(frozen=True, eq=False)
class WitnessCheckReport(SerializableMixin):
    """Defects of ``psi(a u) - psi(a)`` over the whole basis of A.

    Attributes:
        phi: Label of the excluded character.
        psi_defects: For each ψ ≠ φ, the defects over all basis vectors.
        phi_defects: The same defects for ψ = φ itself; these are expected
            to be nonzero wherever ``phi(a) != 0``.
        phi_of_a0: Value ``phi(a0)``, which must be 1.
        passed: True when every ψ ≠ φ defect is within ``tol``.
        tol: Threshold used.
    """

    phi: str
    psi_defects: Dict[str, list[float]] = field(default_factory=dict)
    phi_defects: list[float] = field(default_factory=list)
    phi_of_a0: complex = 0j
    passed: bool = True
    tol: float = 0.0
    notes: tuple[str, ...] = ()

    @property
    def max_psi_defect(self) -> float:
        return max((max(row, default=0.0) for row in self.psi_defects.values()), default=0.0)

    @property
    def max_phi_defect(self) -> float:
        return max(self.phi_defects, default=0.0)
