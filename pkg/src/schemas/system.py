"""
Schemas Pydantic de configuración del sistema MC-CDMA.
Define SystemConfig, parámetros del compander, del canal y de los generadores LFSR.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

# Constantes para strings reutilizados
SEED_DESCRIPTION = "Semilla maestra del experimento"
MU_DESCRIPTION = "Factor de compansión μ"

# Par preferido de grado 5 (x^5+x^2+1, x^5+x^4+x^3+x^2+1)
DEFAULT_GOLD_TAPS_A = 0b100101
DEFAULT_GOLD_TAPS_B = 0b111101
# x^7+x^3+1, período 127
DEFAULT_PN_TAPS = 0b10001001


def is_power_of_two(value: int) -> bool:
    """Verificar si un entero positivo es potencia de dos."""
    return value > 0 and (value & (value - 1)) == 0


def max_dyadic_levels(length: int) -> int:
    """
    Número de veces que una longitud puede dividirse entre dos.

    Args:
        length: Longitud del vector

    Returns:
        Niveles máximos de una descomposición Haar sobre esa longitud
    """
    levels = 0
    while length > 1 and length % 2 == 0:
        length //= 2
        levels += 1
    return levels


def _prime_factors(value: int) -> List[int]:
    factors = []
    candidate = 2
    while candidate * candidate <= value:
        if value % candidate == 0:
            factors.append(candidate)
            while value % candidate == 0:
                value //= candidate
        candidate += 1
    if value > 1:
        factors.append(value)
    return factors


def _gf2_pow_x(exponent: int, modulus: int, degree: int) -> int:
    # x^exponent mod modulus sobre GF(2); los polinomios son máscaras de bits.
    def mulmod(a: int, b: int) -> int:
        product = 0
        while b:
            if b & 1:
                product ^= a
            b >>= 1
            a <<= 1
            if (a >> degree) & 1:
                a ^= modulus
        return product

    result, base = 1, 0b10
    while exponent:
        if exponent & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        exponent >>= 1
    return result


def is_primitive(taps: int, degree: int) -> bool:
    """
    Verificar si un polinomio de grado m sobre GF(2) es primitivo.

    x tiene orden exactamente 2^m - 1 módulo el polinomio si x^(2^m-1) = 1
    y x^((2^m-1)/q) != 1 para cada factor primo q de 2^m - 1.

    Args:
        taps: Polinomio como máscara de bits (bit i = coeficiente de x^i)
        degree: Grado m

    Returns:
        True si el LFSR asociado genera una m-secuencia
    """
    if taps >> degree != 1 or not taps & 1:
        return False
    order = (1 << degree) - 1
    if _gf2_pow_x(order, taps, degree) != 1:
        return False
    return all(_gf2_pow_x(order // q, taps, degree) != 1 for q in _prime_factors(order))


# ===== ENUMERACIONES =====

class Modulation(str, Enum):
    """Constelaciones soportadas."""
    BPSK = "bpsk"
    QPSK = "qpsk"

    @property
    def bits_per_symbol(self) -> int:
        return 1 if self is Modulation.BPSK else 2


class CodeFamily(str, Enum):
    """Familias de códigos de ensanchamiento."""
    PN = "pn"
    GOLD = "gold"
    WALSH = "walsh"


class Precoder(str, Enum):
    """Precodificador ortonormal aplicado a los chips antes de la IFFT."""
    NONE = "none"
    DCT = "dct"
    DWT = "dwt"


class ChannelKind(str, Enum):
    """Modelos de canal."""
    IDEAL = "ideal"
    AWGN = "awgn"
    RAYLEIGH_AWGN = "rayleigh"


# ===== PARÁMETROS DE GENERADORES Y FILTROS =====

class LfsrSpec(BaseModel):
    """
    Especificación de un registro de desplazamiento con realimentación lineal.

    El polinomio se codifica como máscara de bits: el bit i es el coeficiente de x^i,
    por ejemplo x^3+x+1 -> 0b1011.
    """
    model_config = ConfigDict(frozen=True)

    degree: int = Field(ge=2, le=24, description="Grado m del polinomio")
    taps: int = Field(description="Polinomio primitivo como máscara de bits")
    seed: int = Field(default=1, description="Estado inicial (no nulo)")

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v):
        """Validar estado inicial."""
        if v == 0:
            raise ValueError("El estado inicial del LFSR no puede ser todo ceros")
        if v < 0:
            raise ValueError("El estado inicial del LFSR debe ser positivo")
        return v

    @model_validator(mode="after")
    def validate_polynomial(self):
        """Validar que el polinomio tenga grado m, término independiente y sea primitivo."""
        if self.taps >> self.degree != 1:
            raise ValueError(f"taps must describe a polynomial of degree {self.degree}")
        if not self.taps & 1:
            raise ValueError("taps must include the constant term")
        if self.seed >> self.degree:
            raise ValueError(f"seed must fit in {self.degree} bits")
        if not is_primitive(self.taps, self.degree):
            raise ValueError(f"taps {self.taps:#x} is not a primitive polynomial (period below {self.period})")
        return self

    @property
    def period(self) -> int:
        return (1 << self.degree) - 1


class QmfPair(BaseModel):
    """
    Par de filtros espejo en cuadratura (paso bajo h, paso alto g).
    """
    model_config = ConfigDict(frozen=True)

    lowpass: Tuple[float, ...] = Field(description="Coeficientes h(n)")
    highpass: Tuple[float, ...] = Field(description="Coeficientes g(n)")

    @model_validator(mode="after")
    def validate_mirror(self):
        """Validar ortonormalidad y relación espejo entre h y g."""
        h, g = self.lowpass, self.highpass
        if len(h) != len(g) or not h:
            raise ValueError("QMF taps must be non-empty and of equal length")
        length = len(h)
        if abs(sum(x * x for x in h) - 1.0) > 1e-12:
            raise ValueError("lowpass taps must have unit energy")
        if abs(sum(a * b for a, b in zip(h, g))) > 1e-12:
            raise ValueError("lowpass and highpass taps must be orthogonal")
        mirror = [(-1) ** n * h[length - 1 - n] for n in range(length)]
        same = all(abs(a - b) < 1e-12 for a, b in zip(mirror, g))
        flipped = all(abs(a + b) < 1e-12 for a, b in zip(mirror, g))
        if not (same or flipped):
            raise ValueError("highpass taps must mirror the lowpass taps")
        return self


HAAR_QMF = QmfPair(
    lowpass=(1 / math.sqrt(2), 1 / math.sqrt(2)),
    highpass=(1 / math.sqrt(2), -1 / math.sqrt(2)),
)


class CompanderParams(BaseModel):
    """
    Parámetros de la ley μ: factor de compansión y amplitud media de referencia.
    """
    model_config = ConfigDict(frozen=True)

    mu: float = Field(gt=0, description=MU_DESCRIPTION)
    s: float = Field(gt=0, description="Amplitud media de la señal")

    @field_validator("mu", "s")
    @classmethod
    def validate_finite(cls, v):
        """Validar que el parámetro sea finito."""
        if not math.isfinite(v):
            raise ValueError("El parámetro del compander debe ser finito")
        return v


class ChannelSpec(BaseModel):
    """
    Especificación del canal: ideal, AWGN o Rayleigh plano con AWGN.
    """
    model_config = ConfigDict(frozen=True)

    kind: ChannelKind = Field(default=ChannelKind.IDEAL, description="Tipo de canal")
    snr_db: float = Field(default=math.inf, description="SNR por muestra en dB (inf = sin ruido)")
    seed: int = Field(default=0, description=SEED_DESCRIPTION)

    @field_validator("snr_db")
    @classmethod
    def validate_snr(cls, v):
        """Validar SNR: finita o +inf como centinela sin ruido."""
        if math.isnan(v) or v == -math.inf:
            raise ValueError("La SNR debe ser finita o +inf")
        return v


# ===== CONFIGURACIÓN DEL SISTEMA =====

class SystemConfig(BaseModel):
    """
    Configuración completa del transceptor MC-CDMA.
    Los valores por defecto reproducen la simulación de referencia:
    512 símbolos, IFFT de 128 puntos y 64 subportadoras.
    """
    model_config = ConfigDict(frozen=True)

    n_subcarriers: int = Field(default=64, ge=1, description="Subportadoras N_c (= factor de ensanchamiento)")
    ifft_size: int = Field(default=128, description="Tamaño N de la IFFT")
    cp_len: int = Field(default=16, ge=0, description="Muestras de prefijo cíclico")
    n_symbols: int = Field(default=512, ge=1, description="Símbolos por usuario y ejecución")
    modulation: Modulation = Field(default=Modulation.BPSK, description="Modulación")

    code_family: CodeFamily = Field(default=CodeFamily.PN, description="Familia de códigos")
    pn_degree: int = Field(default=7, ge=2, le=24, description="Grado del LFSR PN")
    pn_taps: int = Field(default=DEFAULT_PN_TAPS, description="Polinomio del LFSR PN")
    pn_seed: int = Field(default=1, description="Estado inicial del LFSR PN")
    pn_user_shift: int = Field(default=17, ge=0, description="Desfase de ventana PN entre usuarios")
    gold_degree: int = Field(default=5, ge=2, le=24, description="Grado de la familia Gold")
    gold_taps_a: int = Field(default=DEFAULT_GOLD_TAPS_A, description="Primer polinomio del par preferido")
    gold_taps_b: int = Field(default=DEFAULT_GOLD_TAPS_B, description="Segundo polinomio del par preferido")
    gold_index: int = Field(default=2, ge=0, description="Índice Gold del primer usuario")
    walsh_row: int = Field(default=1, ge=0, description="Fila Walsh del primer usuario")

    precoder: Precoder = Field(default=Precoder.NONE, description="Precodificador")
    dwt_levels: Optional[int] = Field(default=None, ge=1, description="Niveles DWT (None = log2(N_c))")

    compander: bool = Field(default=False, description="Aplicar compansión ley μ")
    mu: float = Field(default=2.0, gt=0, description=MU_DESCRIPTION)
    renormalize: bool = Field(default=False, description="Reescalar para conservar la potencia media")

    n_users: int = Field(default=1, ge=1, description="Número de usuarios síncronos K")
    seed: int = Field(default=0, ge=0, description=SEED_DESCRIPTION)

    @field_validator("ifft_size")
    @classmethod
    def validate_ifft_size(cls, v):
        """Validar tamaño de IFFT."""
        if not is_power_of_two(v):
            raise ValueError("ifft_size must be a power of two")
        return v

    @model_validator(mode="after")
    def validate_sizes(self):
        """Validar invariantes entre campos."""
        if self.ifft_size < self.n_subcarriers:
            raise ValueError("ifft_size must be >= n_subcarriers")
        if self.cp_len >= self.ifft_size:
            raise ValueError("cp_len must be < ifft_size")
        if self.dwt_levels is not None and self.n_subcarriers % (1 << self.dwt_levels):
            raise ValueError("dwt_levels too deep for n_subcarriers")
        if self.precoder is Precoder.DWT and self.resolved_dwt_levels < 1:
            raise ValueError("DWT precoding needs an even number of subcarriers")
        if self.code_family is CodeFamily.WALSH:
            if not is_power_of_two(self.n_subcarriers):
                raise ValueError("Walsh codes need a power-of-two n_subcarriers")
            if self.walsh_row + self.n_users > self.n_subcarriers:
                raise ValueError("not enough Walsh rows for n_users")
        if self.code_family is CodeFamily.GOLD:
            if self.gold_index + self.n_users - 1 > (1 << self.gold_degree):
                raise ValueError("gold_index out of family range for n_users")
        try:
            if self.code_family is CodeFamily.PN:
                self.pn_spec
            elif self.code_family is CodeFamily.GOLD:
                self.gold_pair
        except ValidationError as exc:
            raise ValueError(f"invalid LFSR parameters: {exc.errors()[0]['msg']}") from None
        return self

    # ===== PROPIEDADES CALCULADAS =====

    @property
    def bits_per_symbol(self) -> int:
        return self.modulation.bits_per_symbol

    @property
    def bits_per_user(self) -> int:
        return self.n_symbols * self.bits_per_symbol

    @property
    def frame_length(self) -> int:
        return self.ifft_size + self.cp_len

    @property
    def resolved_dwt_levels(self) -> int:
        if self.dwt_levels is not None:
            return self.dwt_levels
        return max_dyadic_levels(self.n_subcarriers)

    @property
    def pn_spec(self) -> LfsrSpec:
        return LfsrSpec(degree=self.pn_degree, taps=self.pn_taps, seed=self.pn_seed)

    @property
    def gold_pair(self) -> Tuple[LfsrSpec, LfsrSpec]:
        return (
            LfsrSpec(degree=self.gold_degree, taps=self.gold_taps_a, seed=1),
            LfsrSpec(degree=self.gold_degree, taps=self.gold_taps_b, seed=1),
        )

    def with_overrides(self, **overrides: Any) -> "SystemConfig":
        """
        Crear una copia validada con campos sustituidos.

        Args:
            **overrides: Campos a sustituir

        Returns:
            Nueva configuración validada
        """
        data: Dict[str, Any] = self.model_dump()
        data.update(overrides)
        return SystemConfig.model_validate(data)
