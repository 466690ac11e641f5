"""
Configuración de logging a partir de settings.LOG_LEVEL
"""
import logging
import sys

from app.core.config import settings

_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
_configured = False


class _StderrHandler(logging.StreamHandler):
    """Escribe siempre en el sys.stderr vigente"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def configure_logging(level: str | None = None) -> None:
    """
    Configura el logger raíz del paquete una sola vez

    Args:
        level: Nivel explícito; por defecto settings.LOG_LEVEL
    """
    global _configured
    root = logging.getLogger("app")
    root.setLevel((level or settings.LOG_LEVEL).upper())
    if _configured:
        return
    handler = _StderrHandler()
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Logger hijo de 'app'"""
    return logging.getLogger(name if name.startswith("app") else f"app.{name}")
