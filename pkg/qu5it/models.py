"""Experiment configuration documents and run manifests."""

import hashlib
import json
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from qu5it.model.couplings import PRESETS, CouplingSet, ModelInstance


class CouplingValues(BaseModel):
    epsilon: float = 1.0
    v: float = 0.0
    g: float = 0.0


class ModelSpec(BaseModel):
    omega: int = 2                       # number of modes, two per qu5it
    preset: Optional[str] = "set-1"      # set-0 .. set-4
    couplings: Optional[CouplingValues] = None  # explicit values win over the preset

    @field_validator("omega")
    @classmethod
    def omega_even(cls, value: int) -> int:
        if value < 2 or value % 2:
            raise ValueError(f"omega must be even and at least 2, got {value}")
        return value

    @field_validator("preset")
    @classmethod
    def known_preset(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in PRESETS:
            raise ValueError(f"unknown preset {value!r}, expected one of {sorted(PRESETS)}")
        return value

    @model_validator(mode="after")
    def has_couplings(self) -> "ModelSpec":
        if self.preset is None and self.couplings is None:
            raise ValueError("either a preset or explicit couplings are required")
        return self

    def coupling_set(self) -> CouplingSet:
        if self.couplings is not None:
            return CouplingSet(self.couplings.epsilon, self.couplings.v, self.couplings.g)
        return PRESETS[self.preset]

    def instance(self) -> ModelInstance:
        return ModelInstance(self.omega, self.coupling_set())


class InitialStateSpec(BaseModel):
    label: Optional[Literal["A", "B"]] = "A"
    digits: Optional[List[int]] = None        # explicit basis state
    prep_angles: Optional[List[float]] = None  # single-qu5it prep chain, 4 angles

    @model_validator(mode="after")
    def one_source(self) -> "InitialStateSpec":
        given = [x is not None for x in (self.digits, self.prep_angles)]
        if sum(given) > 1:
            raise ValueError("give at most one of digits and prep_angles")
        return self


class EvolutionSpec(BaseModel):
    t_max: float = 1.0
    points: int = 21
    n_trot: List[int] = Field(default_factory=list)  # empty = exact only
    backend: Literal["native", "controlled"] = "native"
    shots: int = 0
    seed: int = 1234

    @field_validator("points")
    @classmethod
    def enough_points(cls, value: int) -> int:
        if value < 1:
            raise ValueError("points must be at least 1")
        return value

    @field_validator("n_trot")
    @classmethod
    def positive_steps(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("Trotter step counts must be positive")
        return value

    def grid(self) -> List[float]:
        if self.points == 1:
            return [self.t_max]
        return [self.t_max * k / (self.points - 1) for k in range(self.points)]


class SpectrumSpec(BaseModel):
    omegas: List[int] = Field(default_factory=lambda: [2, 4, 6, 8])
    presets: List[str] = Field(default_factory=lambda: sorted(PRESETS))
    particle_numbers: Optional[List[int]] = None  # None = every sector
    k: int = 3

    @field_validator("presets")
    @classmethod
    def known_presets(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in PRESETS]
        if unknown:
            raise ValueError(f"unknown presets {unknown}, expected names from {sorted(PRESETS)}")
        return value


class ResourcesSpec(BaseModel):
    omegas: List[int] = Field(default_factory=lambda: list(range(2, 42, 2)))
    backends: List[Literal["controlled", "native"]] = Field(default_factory=lambda: ["controlled", "native"])


class BenchSpec(BaseModel):
    omegas: List[int] = Field(default_factory=lambda: [2, 4, 6, 8])
    n_trot: List[int] = Field(default_factory=lambda: [1, 2, 4, 8])
    repeats: int = 1


class OutputSpec(BaseModel):
    directory: str = "results"
    stem: Optional[str] = None
    formats: List[Literal["csv", "json"]] = Field(default_factory=lambda: ["csv", "json"])
    emit_circuit: Optional[str] = None


class ExperimentConfig(BaseModel):
    model: ModelSpec = Field(default_factory=ModelSpec)
    initial_state: InitialStateSpec = Field(default_factory=InitialStateSpec)
    evolution: EvolutionSpec = Field(default_factory=EvolutionSpec)
    spectrum: SpectrumSpec = Field(default_factory=SpectrumSpec)
    resources: ResourcesSpec = Field(default_factory=ResourcesSpec)
    bench: BenchSpec = Field(default_factory=BenchSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    jobs: int = 1

    @field_validator("jobs")
    @classmethod
    def positive_jobs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("jobs must be at least 1")
        return value

    def config_hash(self) -> str:
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class RunManifest(BaseModel):
    command: str
    config_hash: str
    version: str
    prng: str
    seed: Optional[int] = None
    stages: Dict[str, float] = Field(default_factory=dict)  # stage -> seconds
