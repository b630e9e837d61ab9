import logging

from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Numerical and runtime settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="QU5IT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application
    app_name: str = "qu5it - SO(5) qudit simulator"
    debug: bool = False
    log_level: str = "INFO"

    # Tolerances
    norm_tolerance: float = 1e-10
    unitarity_tolerance: float = 1e-12
    pauli_zero_tolerance: float = 1e-15

    # Size guards
    max_qudits_full_space: int = 6  # 5^6 = 15625 amplitudes
    max_qudits_hamiltonian: int = 8
    max_qudits_enumeration: int = 10  # Omega = 20

    # Eigensolvers
    dense_eigh_limit: int = 4096  # sector dimension, Lanczos above
    krylov_tolerance: float = 1e-10

    # Engine
    engine_workers: int = 1  # 1 = strictly sequential
    engine_chunk_min: int = 4096

    # Output
    output_digits: int = 12
    prng_name: str = "numpy.PCG64"

    def validate_settings(self):
        """Validate that numerical settings are usable."""
        errors = []

        for name in ("norm_tolerance", "unitarity_tolerance", "krylov_tolerance"):
            if not 0 < getattr(self, name) < 1:
                errors.append(f"{name.upper()} must lie in (0, 1)")

        if self.max_qudits_full_space < 1:
            errors.append("MAX_QUDITS_FULL_SPACE must be positive")

        if self.max_qudits_hamiltonian < self.max_qudits_full_space:
            errors.append("MAX_QUDITS_HAMILTONIAN must not be below MAX_QUDITS_FULL_SPACE")

        if self.engine_workers < 1:
            errors.append("ENGINE_WORKERS must be at least 1")

        if not 1 <= self.output_digits <= 17:
            errors.append("OUTPUT_DIGITS must be between 1 and 17")

        if errors:
            raise ValueError(f"Invalid settings: {', '.join(errors)}")


# Global settings instance
settings = Settings()

try:
    settings.validate_settings()
except ValueError as e:
    logger.warning(f"⚠️  Configuration Warning: {e}")
