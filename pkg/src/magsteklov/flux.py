"""Flux parameter and its gauge reduction.

The magnetic Steklov spectrum depends on the flux only through its distance to
the nearest integer, so every spectral routine consumes ``Flux.reduced``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FluxOutOfRange, NonFinite


@dataclass(frozen=True)
class Flux:
    raw: float
    reduced: float

    @property
    def is_integer(self) -> bool:
        return self.reduced == 0.0

    @property
    def is_half(self) -> bool:
        return self.reduced == 0.5

    def require_open(self) -> float:
        """Reduced flux, checked to lie strictly inside (0, 1/2)."""
        if not 0.0 < self.reduced < 0.5:
            raise FluxOutOfRange(f"reduced flux must lie in (0, 1/2), got {self.reduced!r}")
        return self.reduced


def reduce_flux(raw: float | Flux) -> Flux:
    """Reduce a flux to its distance from the nearest integer."""
    if isinstance(raw, Flux):
        return raw
    raw = float(raw)
    if not math.isfinite(raw):
        raise NonFinite(f"flux must be finite, got {raw!r}")
    reduced = abs(raw - round(raw))
    return Flux(raw=raw, reduced=min(reduced, 0.5))

