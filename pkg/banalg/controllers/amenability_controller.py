"""Commands deciding Δ-weak amenability, φ-amenability and kernel identities."""

from typing import Any

from ..models.report import DecisionReport
from ..services.amenability_service import (
    delta_weak_identity,
    delta_weak_phi_amenable,
    left_identity_in_kernel,
    phi_amenable,
    right_identity_in_kernel,
)
from .base import BaseCommand, format_complex


class DecisionCommand(BaseCommand):
    """Shared text rendering for commands returning a ``DecisionReport``."""

    def render_text(self, payload: Any) -> str:
        report: DecisionReport = payload
        head = f"{self.name}"
        if report.phi:
            head += f" phi={report.phi}"
        if report.convention:
            head += f" ({report.convention} convention)"
        lines = [f"{head}: {report.decision}"]
        if report.witness is not None:
            values = ", ".join(format_complex(v) for v in report.witness.coeffs)
            lines.append(f"witness: [{values}]")
        lines.append(f"max residual: {report.max_residual:.2e} (tol {report.tol:.1e})")
        if report.affine_dim is not None:
            lines.append(f"affine dimension: {report.affine_dim}")
        lines.extend(f"note: {note}" for note in report.notes)
        return "\n".join(lines)


class DeltaWeakIdentityCommand(DecisionCommand):
    name = "dw-identity"
    help = "find e with psi(e) = 1 for every character psi"

    def execute(self) -> DecisionReport:
        return delta_weak_identity(self.algebra, self.config.tol, self.config.seed)


class DeltaWeakAmenableCommand(DecisionCommand):
    name = "dw-amen"
    help = "decide Δ-weak φ-amenability"
    needs_phi = True

    def execute(self) -> DecisionReport:
        return delta_weak_phi_amenable(self.algebra, self.phi(), self.config.tol, self.config.seed)


class PhiAmenableCommand(DecisionCommand):
    name = "phi-amen"
    help = "decide φ-amenability under the left or right convention"
    needs_phi = True

    def execute(self) -> DecisionReport:
        return phi_amenable(self.algebra, self.phi(), self.config.convention, self.config.tol, self.config.seed)  # type: ignore[arg-type]


class KernelRightIdentityCommand(DecisionCommand):
    name = "kernel-rid"
    help = "decide whether ker(phi) has a right identity"
    needs_phi = True

    def execute(self) -> DecisionReport:
        return right_identity_in_kernel(self.algebra, self.phi(), self.config.tol, self.config.seed)  # type: ignore[arg-type]


class KernelLeftIdentityCommand(DecisionCommand):
    name = "kernel-lid"
    help = "decide whether ker(phi) has a left identity"
    needs_phi = True

    def execute(self) -> DecisionReport:
        return left_identity_in_kernel(self.algebra, self.phi(), self.config.tol, self.config.seed)  # type: ignore[arg-type]
