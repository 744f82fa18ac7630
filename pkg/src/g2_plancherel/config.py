"""
Default numerical settings and the CLI run configuration.

Constants are grouped by the module that consumes them; ``RunConfig`` gathers
the values the command line can override and validates them on creation.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional


# ==================== SERIES ====================

DEFAULT_SERIES = {
    "max_height": 40,
    "resonance_tol": 1e-9,
    "tail_tol": 1e-10,
    "batch_size": 2048,
}

# ==================== QUADRATURE ====================

DEFAULT_QUADRATURE = {
    "lambda_box": 12.0,
    "lambda_step": 0.1,
    "h_box": 1.5,
    "h_step": 0.05,
}

# ==================== RESIDUES ====================

DEFAULT_RESIDUE = {
    "eps": (1e-3, 5e-4),
    "circle_radius": 1e-2,
    "circle_nodes": 64,
}

# ==================== TOLERANCES ====================

DEFAULT_TOLERANCES = {
    "gamma": 1e-12,
    "c_function": 1e-10,
    "duplication": 1e-11,
    "c0": 1e-10,
    "residue": 1e-8,
    "w_independence": 1e-9,
    "p_forms": 1e-12,
    "p_residue": 1e-6,
    "w_invariance": 1e-10,
    "hypergeometric": 1e-10,
    "limit": 1e-4,
    "positivity": -1e-15,
}

# ==================== CLI ====================

KTYPES = ("triv", "pi1", "pi2")
SYSTEMS = ("G2", "A1")
OUTPUT_FORMATS = ("csv", "json")
SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    """Settings shared by every CLI subcommand."""

    ktype: str = "triv"
    system: str = "G2"
    metric_scale: float = 1.0
    max_height: int = DEFAULT_SERIES["max_height"]
    lambda_box: float = DEFAULT_QUADRATURE["lambda_box"]
    lambda_step: float = DEFAULT_QUADRATURE["lambda_step"]
    h_box: float = DEFAULT_QUADRATURE["h_box"]
    h_step: float = DEFAULT_QUADRATURE["h_step"]
    tol: float = DEFAULT_TOLERANCES["c_function"]
    output_format: str = "csv"
    out: Optional[Path] = None
    verbose: bool = True
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.ktype not in KTYPES:
            raise ValueError(f"ktype must be one of {KTYPES}, got {self.ktype!r}")
        if self.system not in SYSTEMS:
            raise ValueError(f"system must be one of {SYSTEMS}, got {self.system!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(
                f"format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}"
            )
        for name in ("metric_scale", "lambda_box", "lambda_step", "h_box", "h_step", "tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if int(self.max_height) < 0:
            raise ValueError(f"max_height must be >= 0, got {self.max_height!r}")
        if self.out is not None:
            self.out = Path(self.out)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["out"] = str(self.out) if self.out is not None else None
        return d
