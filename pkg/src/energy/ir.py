"""IR-signature proxy: affine in the total CPU load of a node."""

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class IrSignature:
    sigma0: float = 1.0
    sigma1: float = 2.0
    # interception threshold; None disables exposure reporting
    threshold: Optional[float] = None

    def __post_init__(self):
        if self.sigma0 < 0 or self.sigma1 < 0:
            raise ValueError("IR coefficients must be >= 0")

    def value(self, total_load: float) -> float:
        return self.sigma0 + self.sigma1 * total_load


def ir_proxy(cpu_loads: Iterable[float], signature: IrSignature) -> float:
    """IR value of a node hosting instances with the given loads"""
    return signature.value(sum(cpu_loads))
