"""
Excepciones personalizadas del toolkit
"""
from typing import Optional, Sequence


class AppException(Exception):
    """Excepción base de la aplicación"""
    def __init__(self, message: str = "Error en la aplicación"):
        self.message = message
        super().__init__(self.message)


class NotFoundException(AppException):
    """Recurso no encontrado"""
    def __init__(self, message: str = "Recurso no encontrado"):
        super().__init__(message)


class ValidationException(AppException):
    """Error de validación (parámetros de entrada)"""
    def __init__(self, message: str = "Error de validación"):
        super().__init__(message)


class DomainException(AppException):
    """Operación fuera del dominio matemático permitido"""
    def __init__(self, message: str = "Operación fuera de dominio"):
        super().__init__(message)


# Excepciones específicas por módulo

class NonInvertibleVariableException(DomainException):
    """Exponente negativo sobre una variable no invertible"""
    def __init__(self, variable: str):
        super().__init__(f"La variable '{variable}' no es invertible: exponente negativo no permitido")


class ZeroInvertibleValueException(DomainException):
    """Valor cero asignado a una variable invertible"""
    def __init__(self, variable: str):
        super().__init__(f"La variable invertible '{variable}' no puede evaluarse en 0")


class DimensionMismatchException(DomainException):
    """Dimensiones de matrices incompatibles"""
    def __init__(self, left: tuple, right: tuple, operation: str = "producto"):
        super().__init__(f"Dimensiones incompatibles para {operation}: {left} y {right}")


class ChartMismatchException(DomainException):
    """Funciones de cartas distintas en un mismo corchete"""
    pass


class StateDomainException(DomainException):
    """Estado fuera del dominio X, Y, Z > 0"""
    pass


class UnknownStructureException(NotFoundException):
    """Estructura nombrada desconocida"""
    def __init__(self, identifier: str, known: Optional[Sequence[str]] = None):
        message = f"Estructura '{identifier}' desconocida"
        if known:
            message += f" (disponibles: {', '.join(known)})"
        super().__init__(message)


class InvalidParametersException(ValidationException):
    """Parámetros inválidos (p. ej. deformación nula)"""
    pass


class IntegrationException(AppException):
    """Fallo del integrador; conserva el último estado válido"""
    def __init__(self, message: str, last_state: Optional[Sequence[float]] = None, t: Optional[float] = None):
        self.last_state = tuple(last_state) if last_state is not None else None
        self.t = t
        super().__init__(message)
