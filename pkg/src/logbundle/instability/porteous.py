"""Expected number of unstable lines or conics of a three-conic arrangement."""

from __future__ import annotations

from dataclasses import dataclass

from ..chernseries import ChernSeries, banded_determinant


@dataclass(frozen=True)
class PorteousSetting:
    name: str
    base_dim: int
    size: int

    def source(self) -> ChernSeries:
        k = self.size
        if self.name == "conics":
            # (Ω_{P5})^3
            return ChernSeries.cotangent_projective(5, k) ** 3
        # R^1 of O(-4) on the point-line incidence: kernel of O(-1)^6 -> O^3, cubed
        return ChernSeries.split([-1] * 6, k) ** 3

    def target(self) -> ChernSeries:
        k = self.size
        if self.name == "conics":
            # (O(-1)^3)^3 ⊕ O(-1)^2
            return ChernSeries.split([-1] * 11, k)
        # (Ω_{P2})^3 ⊕ O(-1)^2
        return ChernSeries.cotangent_projective(2, k) ** 3 * ChernSeries.split([-1] * 2, k)

    def quotient(self) -> ChernSeries:
        return self.target() / self.source()


SETTINGS = {
    "conics": PorteousSetting("conics", 5, 5),
    "lines": PorteousSetting("lines", 2, 2),
}


def porteous_series(setting: str) -> ChernSeries:
    return _setting(setting).quotient()


def porteous_count(setting: str) -> int:
    """``det [c_{1-i+j}(target - source)]`` over the parameter space of the setting."""
    s = _setting(setting)
    return banded_determinant(s.quotient(), s.size)


def _setting(setting: str) -> PorteousSetting:
    try:
        return SETTINGS[setting]
    except KeyError:
        raise ValueError(f"setting must be one of {sorted(SETTINGS)}") from None
