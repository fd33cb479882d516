"""
Schemas base para las respuestas de la CLI.
Formato estándar {success, message, data, timestamp} para éxitos y errores.
"""

from datetime import datetime
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_serializer


class BaseResponse(BaseModel):
    """
    Schema base para todas las respuestas de la CLI.
    """
    success: bool = Field(description="Indica si la operación fue exitosa")
    message: str = Field(description="Mensaje descriptivo de la respuesta")
    timestamp: datetime = Field(default_factory=datetime.now, description="Timestamp de la respuesta")

    @field_serializer("timestamp")
    def serialize_timestamp(self, value: datetime) -> str:
        return value.isoformat()


class RunResponse(BaseResponse):
    """
    Schema para ejecuciones exitosas de un experimento.
    Formato estándar: {success: true, message: string, data: object, output: string, timestamp: datetime}
    """
    success: bool = Field(default=True, description="Siempre true para ejecuciones exitosas")
    data: Optional[Dict[str, Any]] = Field(default=None, description="Resumen del experimento")
    output: Optional[str] = Field(default=None, description="Ruta del CSV escrito")


class ErrorResponse(BaseResponse):
    """
    Schema para errores de ejecución.
    Formato estándar: {success: false, message: string, error_type: string, exit_code: integer, timestamp: datetime}
    """
    success: bool = Field(default=False, description="Siempre false para errores")
    error_type: str = Field(default="simulation_error", description="Tipo de error")
    exit_code: int = Field(default=1, description="Código de salida del proceso")
