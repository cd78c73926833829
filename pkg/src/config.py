"""
Configuration management for fracint

Numerical defaults (rule sizes, tolerances, oracle settings) and logging
level. Every value can be overridden through a FRACINT_* environment
variable or a .env file; command-line flags take precedence over both.
"""

import logging
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    """Central configuration class for the library and CLI"""

    # Logging
    LOG_LEVEL: str = os.getenv("FRACINT_LOG_LEVEL", "WARNING").upper()

    # Gauss-Jacobi evaluation
    JACOBI_RULE_SIZE: int = int(os.getenv("FRACINT_JACOBI_RULE_SIZE", "40"))
    JACOBI_MAX_RULE_SIZE: int = int(os.getenv("FRACINT_JACOBI_MAX_RULE_SIZE", "80"))
    INFINITE_MAX_RULE_SIZE: int = int(os.getenv("FRACINT_INFINITE_MAX_RULE_SIZE", "320"))
    EVAL_REL_TOL: float = float(os.getenv("FRACINT_EVAL_REL_TOL", "1e-10"))
    # (b/x)**rho or (x/a)**rho above this skips the mapped rule for a graded mesh
    WIDE_INTERVAL_RATIO: float = float(os.getenv("FRACINT_WIDE_INTERVAL_RATIO", "1e4"))

    # Adaptive and graded-mesh quadrature
    ADAPTIVE_REL_TOL: float = float(os.getenv("FRACINT_ADAPTIVE_REL_TOL", "1e-10"))
    ADAPTIVE_MAX_DEPTH: int = int(os.getenv("FRACINT_ADAPTIVE_MAX_DEPTH", "40"))
    ADAPTIVE_MAX_INTERVALS: int = int(os.getenv("FRACINT_ADAPTIVE_MAX_INTERVALS", "2000"))
    GRADED_PANEL_POINTS: int = int(os.getenv("FRACINT_GRADED_PANEL_POINTS", "15"))

    # Brute-force oracle
    ORACLE_PANELS: int = int(os.getenv("FRACINT_ORACLE_PANELS", "64"))
    ORACLE_PANEL_POINTS: int = int(os.getenv("FRACINT_ORACLE_PANEL_POINTS", "15"))
    ORACLE_REFINEMENT_LEVELS: int = int(os.getenv("FRACINT_ORACLE_REFINEMENT_LEVELS", "3"))

    # Norms and identity checks
    SUP_GRID_POINTS: int = int(os.getenv("FRACINT_SUP_GRID_POINTS", "2049"))
    SHIFT_TOL: float = float(os.getenv("FRACINT_SHIFT_TOL", "1e-9"))
    SEMIGROUP_TOL: float = float(os.getenv("FRACINT_SEMIGROUP_TOL", "1e-6"))
    PRODUCT_TOL: float = float(os.getenv("FRACINT_PRODUCT_TOL", "1e-6"))
    BOUNDED_SLACK: float = float(os.getenv("FRACINT_BOUNDED_SLACK", "1e-6"))
    HADAMARD_TOL: float = float(os.getenv("FRACINT_HADAMARD_TOL", "5e-3"))

    # Verification runner
    VERIFY_CASES: int = int(os.getenv("FRACINT_VERIFY_CASES", "50"))

    @classmethod
    def validate(cls) -> bool:
        """Check that the numeric settings are usable"""
        problems = []

        for name in ("JACOBI_RULE_SIZE", "JACOBI_MAX_RULE_SIZE", "INFINITE_MAX_RULE_SIZE",
                     "ADAPTIVE_MAX_DEPTH", "ADAPTIVE_MAX_INTERVALS", "GRADED_PANEL_POINTS",
                     "ORACLE_PANEL_POINTS", "SUP_GRID_POINTS", "VERIFY_CASES"):
            if getattr(cls, name) < 1:
                problems.append(name)

        for name in ("EVAL_REL_TOL", "ADAPTIVE_REL_TOL"):
            if not 0.0 < getattr(cls, name) <= 0.1:
                problems.append(name)

        if not cls.WIDE_INTERVAL_RATIO > 1.0:
            problems.append("WIDE_INTERVAL_RATIO")
        if cls.ORACLE_PANELS < 8:
            problems.append("ORACLE_PANELS")
        if cls.ORACLE_REFINEMENT_LEVELS < 2:
            problems.append("ORACLE_REFINEMENT_LEVELS")
        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            problems.append("LOG_LEVEL")

        if problems:
            logger.warning(f"Unusable configuration values: {', '.join(problems)}")
            return False

        return True


# Create an instance for easy importing
config = Config()
