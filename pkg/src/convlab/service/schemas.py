"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class PosetRequest(BaseModel):
    poset: str = Field(description="poset DSL or JSON text")


class PosetSummary(BaseModel):
    elements: list[str]
    covers: list[list[str]]
    relation: list[list[str]]
    dsl: str
    dot: str


class AnalyzeRequest(BaseModel):
    poset: str
    selection: str = "Dir"
    mn: Optional[str] = None


class AnalyzeResponse(BaseModel):
    poset: str
    family: dict
    mn_family: Optional[dict] = None
    relations: dict
    verdicts: dict
    reports: dict
    poset_properties: dict
    violations: bool


class TopologyRequest(BaseModel):
    poset: str
    selection: str = "Dir"
    mn: Optional[str] = None


class TopologyResponse(BaseModel):
    poset: str
    kind: str
    topology: dict
    discrete: bool
    equals_alexandrov: Optional[bool] = None
    equals_scott: Optional[bool] = None


class ConvergeRequest(BaseModel):
    poset: str
    net: dict
    selection: str = "Dir"
    mn: Optional[str] = None
    limit: str


class ConvergeResponse(BaseModel):
    kind: str
    limit: str
    converges: bool
    tau_converges: bool
    limits: list[str]


class MineRequest(BaseModel):
    n_max: int = 3
    selections: list[str] = ["Dir", "ACh"]
    properties: list[str] = ["m_cts", "alpha_m_cts", "m1"]
    unlabeled: bool = True
    seed: int = 0


class EnumerateResponse(BaseModel):
    n: int
    dedup: str
    count: int
    posets: list[str]


class WorkedExampleResponse(BaseModel):
    poset: str
    selection: str
    computed: dict
    expected: dict
    match: bool
