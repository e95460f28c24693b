"""Request/response schemas for the compute service.

Rationals travel as "p/q" strings so nothing is ever rounded; degrees
may be null where the quantity is undefined (zero operator or zero
polynomial).  Responses deliberately contain no timestamps and no
runtimes, so identical requests yield byte-identical JSON.  The corpus
rows are the one exception: they carry a runtime for the human table,
and the CLI strips it from JSON output.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Suite = Literal["eq1", "eq2", "eq3", "eq4", "independence", "submodule"]


class NormalizeRequest(BaseModel):
    n: int = Field(ge=1)
    expr: str
    trunc: int | None = Field(default=None, ge=0)


class NormalizeResponse(BaseModel):
    n: int
    input: str
    normal_form: str
    term_count: int
    bernstein_degree: int | None
    order_degree: int | None


class ApplyRequest(BaseModel):
    n: int = Field(ge=1)
    op: str
    poly: str
    trunc: int | None = Field(default=None, ge=0)


class ApplyResponse(BaseModel):
    n: int
    result: str


class DimRequest(BaseModel):
    n: int = Field(ge=1)
    generators: list[str] = []
    slack: int | None = Field(default=None, ge=0)
    budget: int = Field(default=16, ge=3)
    fit_window: int = Field(default=4, ge=1)
    stabilization_window: int = Field(default=2, ge=1)


class DimResponse(BaseModel):
    n: int
    degree: int
    samples: list[list[int]]
    binomial_coeffs: list[str]
    leading: str
    multiplicity: str
    exact: bool
    stabilized: bool
    fit_window: list[int]
    verdict: str  # "PASS" iff degree >= n


class IdentityReportModel(BaseModel):
    identity: str
    parameters: dict
    holds: bool
    inconclusive: bool = False
    witness: str | None = None


class CheckRequest(BaseModel):
    suite: Suite
    n: int = Field(default=1, ge=1)
    f: str | None = None
    i: int = Field(default=1, ge=1)
    s: int | None = Field(default=None, ge=0)
    t: int | None = Field(default=None, ge=0)
    h: int | None = Field(default=None, ge=0)
    p: str | None = None
    generators: list[str] = []
    seed: int = 0
    cases: int = Field(default=200, ge=1)
    slack: int | None = Field(default=None, ge=0)
    budget: int = Field(default=16, ge=3)
    fit_window: int = Field(default=4, ge=1)
    stabilization_window: int = Field(default=2, ge=1)


class CheckResponse(BaseModel):
    suite: Suite
    seed: int
    cases: int
    passed_count: int
    failed_count: int
    inconclusive_count: int
    passed: bool
    inconclusive: bool
    reports: list[IdentityReportModel]
    detail: dict = {}


class FiltrationSpecModel(BaseModel):
    generators: list[str] = Field(min_length=1)
    shifts: list[int] | None = None


class CompareRequest(BaseModel):
    n: int = Field(ge=1)
    generators: list[str] = []
    specs: list[FiltrationSpecModel] = Field(min_length=2, max_length=2)
    t_max: int = Field(default=8, ge=3)
    slack: int | None = Field(default=None, ge=0)
    stabilization_window: int = Field(default=2, ge=1)
    fit_window: int = Field(default=4, ge=1)


class CompareResponse(BaseModel):
    w: int | None
    degrees: list[int | None]
    equal_degrees: bool
    t_max: int
    stabilized: bool


class CorpusEntryModel(BaseModel):
    name: str
    n: int = Field(ge=1)
    generators: list[str] = []
    expect_d: int | None = None


class CorpusRequest(BaseModel):
    entries: list[CorpusEntryModel] = Field(min_length=1)
    slack: int | None = Field(default=None, ge=0)
    budget: int = Field(default=16, ge=3)
    fit_window: int = Field(default=4, ge=1)
    stabilization_window: int = Field(default=2, ge=1)


class CorpusRowModel(BaseModel):
    name: str
    n: int
    d: int | None
    multiplicity: str | None
    stabilized: bool | None
    verdict: str
    expected_d: int | None
    detail: str = ""
    runtime: float


class CorpusResponse(BaseModel):
    rows: list[CorpusRowModel]
    passed: bool
    failure_count: int
    inconclusive_count: int


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str
