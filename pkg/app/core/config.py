"""
Configuración centralizada del toolkit
Las variables se pueden sobrescribir con archivo .env o variables de entorno
"""
import logging
from typing import List

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración principal de la aplicación
    Las variables se pueden sobrescribir con archivo .env
    """

    # ============================================
    # Configuración General
    # ============================================
    APP_NAME: str = "BookLie - Estructuras Poisson-Lie del grupo libro"
    APP_VERSION: str = "1.0.0"
    API_V1_PREFIX: str = "/api/v1"
    DEBUG: bool = False
    ENVIRONMENT: str = "development"
    PORT: int = 8000

    # ============================================
    # CORS
    # ============================================
    CORS_ORIGINS: str = "http://localhost:3000,http://localhost:5173,http://localhost:8080"

    @property
    def backend_cors_origins(self) -> List[str]:
        """Parsea CORS_ORIGINS a lista"""
        return [origin.strip() for origin in self.CORS_ORIGINS.split(",")]

    # ============================================
    # Logging
    # ============================================
    LOG_LEVEL: str = "INFO"

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Acepta solo niveles conocidos por logging"""
        level = v.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"LOG_LEVEL desconocido: {v}")
        return level

    # ============================================
    # Paralelismo y reproducibilidad
    # ============================================
    BOOKLIE_THREADS: int = 4
    SEED: int = 0

    @field_validator("BOOKLIE_THREADS")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        """Al menos un hilo de trabajo"""
        if v < 1:
            raise ValueError("BOOKLIE_THREADS debe ser >= 1")
        return v

    # ============================================
    # Aritmética exacta (muestreo Schwartz-Zippel)
    # ============================================
    RANDOM_NUMERATOR_BOUND: int = 50
    RANDOM_DENOMINATOR_BOUND: int = 10
    RANDOM_EVALUATION_POINTS: int = 20
    SYMBOLIC_TERM_BUDGET: int = 1_000_000

    # ============================================
    # Cartas de coordenadas
    # ============================================
    CHART_SAMPLE_POINTS: int = 100
    CHART_TOLERANCE: float = 1e-9
    CASIMIR_TOLERANCE: float = 1e-10
    CHART_COORD_BOUND: float = 2.0

    # ============================================
    # Dinámica (integrador Dormand-Prince)
    # ============================================
    ODE_RTOL: float = 1e-10
    ODE_ATOL: float = 1e-12
    ODE_MAX_STEPS: int = 1_000_000
    DOMAIN_GUARD: float = 1e-12
    ORACLE_TOLERANCE: float = 1e-10

    # ============================================
    # Salida
    # ============================================
    SIGNIFICANT_DIGITS: int = 17

    # ============================================
    # Configuración de Pydantic Settings
    # ============================================
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )


# Instancia global de configuración
settings = Settings()
