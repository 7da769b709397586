from pydantic import BaseModel, Field
from typing import Dict, List, Optional, Union

class DistributionRequest(BaseModel):
    """Distribution of one statistic over one avoidance class"""
    stat: str = Field(..., description="Catalog name or lin: literal")
    avoid: str = Field("", description="Comma-separated patterns; empty for all of S_n")
    n: int = Field(..., ge=0)
    marks: Optional[List[str]] = Field(None, description="des, head, last, DB, DT, AB, AT, LRMin")

class RefinedTerm(BaseModel):
    """One monomial of a refined distribution"""
    exponents: Dict[str, int]
    coefficient: int

class DistributionResponse(BaseModel):
    """Exact distribution polynomial"""
    stat: str
    avoid: str
    n: int
    coefficients: List[int]
    polynomial: str
    refined: Optional[List[RefinedTerm]] = None

class EquidistributionRequest(BaseModel):
    """Compare two (statistic, avoidance class) pairs for n = 1..max_n"""
    stat1: str
    avoid1: str = ""
    stat2: str
    avoid2: str = ""
    max_n: int = Field(..., ge=1)

class VerdictModel(BaseModel):
    """Per-n comparison"""
    n: int
    agree: bool
    left: List[int]
    right: List[int]

class EquidistributionResponse(BaseModel):
    """Equidistribution verdicts"""
    stat1: str
    avoid1: str
    stat2: str
    avoid2: str
    holds: bool
    first_disagreement: Optional[int] = None
    verdicts: List[VerdictModel]

class MapRequest(BaseModel):
    """Apply a registered bijection"""
    name: str
    input: str = Field(..., description="Permutation, Dyck word or P/Q polyomino")
    inverse: bool = False

class MapResponse(BaseModel):
    """Bijection image"""
    name: str
    input: str
    output: str

class ContinuedFractionResponse(BaseModel):
    """Truncated continued fraction, coefficient lists per power of z"""
    which: str
    order: int
    coefficients: List[List[int]]
    series: str

class GenfuncRequest(BaseModel):
    """Linear statistic over 312-avoiders given by its pattern coefficients"""
    alpha: Union[List[int], Dict[str, int]]
    n: int = Field(..., ge=0)

class GenfuncResponse(BaseModel):
    """Generating polynomial in q, t (des), u (head), v (last)"""
    n: int
    polynomial: str
    terms: List[RefinedTerm]
    q_marginal: Dict[int, int]
    extension: bool

class HealthResponse(BaseModel):
    """Health check response"""
    status: str
    version: str
    cache_writable: bool
