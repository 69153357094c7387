"""Request and response models for the service layer.

Scalars in designs and reports are JSON numbers or exact rational strings
"p/q"; which one appears mirrors the arithmetic mode the computation ran in.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

Scalar = Union[int, float, str]
GroupSpec = Union[Literal["sym", "cyc"], "GeneratedGroup"]


class GeneratedGroup(BaseModel):
    generators: list[list[int]] = Field(min_length=1)


class DesignFile(BaseModel):
    """Mirror of the on-disk design schema."""

    d: int = Field(ge=2)
    mode: Literal["explicit", "orbit"]
    points: list[list[Scalar]] = Field(min_length=1)
    group: Optional[GroupSpec] = None


class MomentReport(BaseModel):
    index: list[int]
    target: Scalar
    observed: Scalar
    residual: Scalar
    symmetrization: str = "none"


class VerifyRequest(BaseModel):
    design: DesignFile
    t: int = Field(ge=1)
    method: Literal["brute-force", "power-sum", "restricted"] = "brute-force"
    restricted: Optional[GroupSpec] = None
    tolerance: float = Field(default=1e-9, gt=0)
    canonical_only: bool = False


class VerifyResponse(BaseModel):
    method: str
    t: int
    is_design: bool
    classification: Literal["proper-design", "pseudodesign", "not-a-design"]
    max_abs_residual: float
    tolerance: float
    exact: bool
    reports: list[MomentReport]


class ConstructRequest(BaseModel):
    d: int = Field(ge=2)
    family: Literal["three-value", "uniform-excess"]
    include_pseudo: bool = False


class ThreeValueSolution(BaseModel):
    d: int
    a: float
    b: float
    c: float
    branch: Literal["plus", "minus"]
    satisfies_restriction: bool
    proper: bool
    orbit_size: int
    base_point: list[Scalar]


class UniformExcessSolution(BaseModel):
    d: int
    a: float
    b: float
    proper: bool


class ConstructResponse(BaseModel):
    family: str
    d: int
    solutions: list[Union[ThreeValueSolution, UniformExcessSolution]]
    designs: list[DesignFile]


class TableRow(BaseModel):
    table: Literal["proper", "improper"]
    d: int
    a: float
    b: float
    c: float
    proper: bool


class TablesResponse(BaseModel):
    rows: list[TableRow]
    csv: str


class SpanCheck(BaseModel):
    label: str
    in_span: bool


class CounterexampleResponse(BaseModel):
    moment_rows: list[MomentReport]
    failure_residual: float
    mirror_residual: float
    spans: list[SpanCheck]
    repair_max_residual: float
    repair_passes: bool
    text: str


class SpanRequest(BaseModel):
    d: int = Field(ge=2)
    group: GroupSpec = "sym"
    k: list[int]
    basis: list[list[int]] = Field(min_length=1)
    adjoin_constant: bool = False


class SpanResponse(BaseModel):
    d: int
    group: str
    k: list[int]
    in_span: bool
    coefficients: Optional[list[str]] = None


class PlotRequest(BaseModel):
    design: Optional[DesignFile] = None
    k: Optional[list[int]] = None
    group: Optional[GroupSpec] = None
    grid: int = Field(default=200, ge=1, le=2000)
    levels: int = Field(default=12, ge=1, le=256)
