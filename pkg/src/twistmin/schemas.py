"""Pydantic models and JSON serialization for the service and CLI."""

from typing import List, Optional

from pydantic import BaseModel, Field

from .cyclo import to_complex


class CycloJSON(BaseModel):
    """Exact cyclotomic number: coordinates in the power basis of Q(zeta_order).

    coeffs lists [numerator, denominator] pairs; approx is an advisory
    floating-point [re, im] approximation.
    """

    order: int
    coeffs: List[List[int]]
    approx: List[float]


def cyclo_to_json(x):
    z = to_complex(x)
    return CycloJSON(
        order=x.order,
        coeffs=[[c.numerator, c.denominator] for c in x.coeffs],
        approx=[z.real, z.imag],
    )


def pretty(x):
    """Compact human-readable approximation of a cyclotomic number."""
    z = to_complex(x)
    if abs(z.imag) < 1e-9:
        re = z.real
        if abs(re - round(re)) < 1e-9:
            return str(int(round(re)))
        return "%.6g" % re
    return "%.6g%+.6gi" % (z.real, z.imag)


class SpaceParams(BaseModel):
    level: int = Field(ge=1)
    weight: int = Field(ge=2)
    character: str = Field(description="Conrey label, e.g. '11.1'")
    kind: str = Field(pattern="^(min|new|full)$")


class TraceRequest(BaseModel):
    space: SpaceParams
    nmax: int = Field(ge=1)
    verify: bool = False


class TraceRecord(BaseModel):
    n: int
    value: CycloJSON
    value_checked: Optional[CycloJSON] = None


class TraceResponse(BaseModel):
    records: List[TraceRecord]
    verified: Optional[bool] = None


class DimRequest(BaseModel):
    space: SpaceParams


class DimResponse(BaseModel):
    dimension: int


class BasisRequest(BaseModel):
    space: SpaceParams
    truncation: Optional[int] = None


class BasisResponse(BaseModel):
    truncation: int
    labels: List[str]
    entries: List[List[CycloJSON]]
    certified_rank: int


class NewformCoeffsRequest(BaseModel):
    space: SpaceParams
    psi: str = Field(description="Conrey label of a primitive character")
    nmax: int = Field(ge=1)


class NewformCoeffsResponse(BaseModel):
    level: int
    character: str
    records: List[TraceRecord]


class ClassNumbersRequest(BaseModel):
    min_d: int = Field(lt=0)


class ClassNumberEntry(BaseModel):
    d: int
    h: int
    w: int


class ClassNumbersResponse(BaseModel):
    entries: List[ClassNumberEntry]


class SelftestRequest(BaseModel):
    max_level: int = 20
    weights: List[int] = [2, 3, 4]
    nmax: int = 10


class SelftestResponse(BaseModel):
    passed: bool
    checks: int
    failures: List[str]
