"""
Application settings and configuration
"""

import os
from pathlib import Path


class Settings:
    """Application settings"""

    # Application
    APP_NAME: str = "Eta Lacunarity Toolkit"
    VERSION: str = "1.0.0"
    DESCRIPTION: str = "Exact q-series, CM forms and the lacunarity scan for eta(z)^2 eta(bz)^2"

    # Logging
    LOG_LEVEL: str = os.getenv("ETALAC_LOG_LEVEL", "INFO")
    LOG_JSON: bool = os.getenv("ETALAC_LOG_JSON", "False").lower() == "true"

    # Storage
    BASE_DIR: Path = Path(__file__).parent.parent
    FIXTURES_DIR: Path = Path(os.getenv("ETALAC_FIXTURES_DIR", str(BASE_DIR / "backend" / "storage" / "fixtures")))
    OUTPUT_DIR: Path = Path(os.getenv("ETALAC_OUTPUT_DIR", str(BASE_DIR / "backend" / "storage" / "outputs")))
    LOGS_DIR: Path = BASE_DIR / "logs"

    # Scan
    JOBS: int = int(os.getenv("ETALAC_JOBS", "1"))
    SCAN_START_TRUNCATION: int = int(os.getenv("ETALAC_SCAN_START_TRUNCATION", "4096"))
    SCAN_B_MAX: int = int(os.getenv("ETALAC_SCAN_B_MAX", "175"))
    B_LIMIT: int = int(os.getenv("ETALAC_B_LIMIT", "500"))
    PROGRESS: bool = os.getenv("ETALAC_PROGRESS", "True").lower() == "true"

    # Density
    DENSITY_X_MAX: int = int(os.getenv("ETALAC_DENSITY_X_MAX", "1000000"))

    # Output formats accepted by every command
    OUTPUT_FORMATS: tuple = ("json", "text")

    ADAPTIVE_SCAN_DEFAULTS = {
        "mode": "adaptive",
        "alternate_prime": None,
        "start_truncation": SCAN_START_TRUNCATION,
        "b_max": SCAN_B_MAX,
    }

    FULL_SCAN_DEFAULTS = {
        "mode": "full",
        "alternate_prime": None,
        "start_truncation": None,
        "b_max": SCAN_B_MAX,
    }

    DENSITY_DEFAULTS = {
        "mode": "support_progression",
        "ladder_start": 1000,
    }

    def get_scan_defaults(self, mode: str) -> dict:
        """Get default settings for a scan mode"""
        if mode == "adaptive":
            return self.ADAPTIVE_SCAN_DEFAULTS.copy()
        elif mode == "full":
            return self.FULL_SCAN_DEFAULTS.copy()
        else:
            raise ValueError(f"Unknown scan mode: {mode}")

    def get_density_defaults(self) -> dict:
        return self.DENSITY_DEFAULTS.copy()


# Global settings instance
settings = Settings()
