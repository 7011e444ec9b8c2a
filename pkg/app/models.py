"""
app/models.py
"""

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class AnnulusSpec(BaseModel):
    """Hyperbolic annulus r <= rho <= R around a centre (r = 0 is a ball)."""

    model_config = ConfigDict(frozen=True)

    r: float = Field(0.0, ge=0.0)
    R: float = Field(gt=0.0)

    @model_validator(mode="after")
    def check_radii(self):
        if not self.r < self.R:
            raise ValueError(f"Annulus needs r < R, got r={self.r}, R={self.R}")
        return self

    @property
    def ratio(self) -> float:
        return self.r / self.R

    def volume(self) -> float:
        outer = math.sinh(0.5 * self.R)
        inner = math.sinh(0.5 * self.r)
        return 4.0 * math.pi * (outer * outer - inner * inner)


class GValue(BaseModel):
    w: float
    value: float


class UnitData(BaseModel):
    t: int
    u: int
    eps_plus: float
    geodesic_length: float
    fundamental_norm: int = 1


class ClassData(BaseModel):
    """Cached arithmetic of one discriminant."""

    D: int
    h_plus: int
    t: int
    u: int
    geodesic_length: float
    squarefree: bool
    cycles: list[list[int]]


class BallSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float = Field(gt=0.0)
    radius: float = Field(gt=0.0)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    ann: AnnulusSpec
    L: float | None = Field(None, gt=0.0)
    D: int | None = Field(None, gt=1)
    A: float = Field(10.0, ge=1.0)
    n_samples: int = Field(1000, ge=2)
    seed: int = Field(42, ge=0, lt=2**64)
    workers: int = Field(1, ge=1)
    step: float = Field(0.5, gt=0.0, le=1.0)
    chunk_size: int = Field(256, ge=1)
    hit_cap: int = Field(1_000_000, ge=1)

    @model_validator(mode="after")
    def check_target(self):
        if self.L is None and self.D is None:
            raise ValueError("Experiment needs a segment length L or a discriminant D")
        if self.D is not None and self.A < 0.5 * math.sqrt(self.D):
            raise ValueError(
                f"Closed-geodesic runs need A >= sqrt(D)/2 = {0.5 * math.sqrt(self.D):.6g}, got A={self.A}"
            )
        return self


class Estimate(BaseModel):
    mean: float
    stderr: float = Field(ge=0.0)
    n: int
    seed: int
    prediction: float
    z_score: float | None = None
    extras: dict[str, float] = {}

    @classmethod
    def from_samples(
        cls,
        samples: np.ndarray,
        seed: int,
        prediction: float,
        extras: dict[str, float] | None = None,
    ) -> "Estimate":
        samples = np.asarray(samples, dtype=float)
        mean = float(np.mean(samples))
        stderr = float(np.std(samples, ddof=1) / math.sqrt(samples.size))
        return cls.from_moments(mean, stderr, samples.size, seed, prediction, extras)

    @classmethod
    def from_moments(
        cls,
        mean: float,
        stderr: float,
        n: int,
        seed: int,
        prediction: float,
        extras: dict[str, float] | None = None,
    ) -> "Estimate":
        z_score = (mean - prediction) / stderr if stderr > 0.0 else None
        return cls(
            mean=mean,
            stderr=stderr,
            n=n,
            seed=seed,
            prediction=prediction,
            z_score=z_score,
            extras=extras or {},
        )


class RunRecord(BaseModel):
    command: str
    config: dict[str, Any]
    input_hash: str
    payload: Any
    passed: bool | None = None
    wall_time: float = 0.0
    timestamp: str = ""
