"""Pydantic request/response models for the HTTP surface.

Set files, IFS files, and grid-set files travel as their textual formats
(lowest-terms rationals), so the wire representation is bit-exact and shares
one parser with the on-disk artifacts.
"""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field


class AttractorRequest(BaseModel):
    ifs_text: str = Field(description="IFS file content ('ifs v1 strictness=...')")
    tolerance: str = Field(description="target tolerance as p/q")
    cap: Optional[int] = Field(default=None, ge=1, description="iteration cap override")


class AttractorResponse(BaseModel):
    cover_text: str
    iterations: int
    error_bound: str
    certified: bool


class ReduceRequest(BaseModel):
    gridset_text: str = Field(description="grid-set file content ('gridset v1 ...')")
    levels: int = Field(default=2, ge=0)
    depth: int = Field(default=5, ge=1)


class ReduceResponse(BaseModel):
    cover_text: str
    plan_text: str
    x_lower: str
    x_upper: str
    resolution: str


class HausdorffRequest(BaseModel):
    cover_a: str
    cover_b: str


class HausdorffResponse(BaseModel):
    distance: str
    ideal_within: str


class RenderRequest(BaseModel):
    cover_text: str
    height: int = Field(default=40, ge=1)
    width: int = Field(default=800, ge=1)
    embed_dim: Optional[int] = Field(default=None, ge=1)


class RenderResponse(BaseModel):
    svg: str


class VerifyOptions(BaseModel):
    maxlen: Optional[int] = Field(default=None, ge=1)
    kt_lo: Optional[int] = Field(default=None, ge=2)
    kt_hi: Optional[int] = Field(default=None, ge=2)
    kt_max: Optional[int] = Field(default=None, ge=2)
    levels: Optional[int] = Field(default=None, ge=1)
    depth: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    random_count: Optional[int] = Field(default=None, ge=1)
    triples: Optional[int] = Field(default=None, ge=1)
    pairs: Optional[int] = Field(default=None, ge=1)
    k_max: Optional[int] = Field(default=None, ge=1)
    n_max: Optional[int] = Field(default=None, ge=0)
    chain_n: Optional[int] = Field(default=None, ge=2)
    extra_depth: Optional[int] = Field(default=None, ge=1)
    horizon: Optional[int] = Field(default=None, ge=1)


class VerifyRequest(BaseModel):
    suite: str
    options: VerifyOptions = Field(default_factory=VerifyOptions)


class CheckLineModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    lines: List[CheckLineModel]
    all_passed: bool


class ErrorResponse(BaseModel):
    detail: str
