import logging
from fastapi import APIRouter, HTTPException, Query
from mahonia.models import ContinuedFractionResponse, GenfuncRequest, GenfuncResponse, RefinedTerm
from mahonia.dependencies import check_api_n
from mahonia.core.qseries import alpha_is_extension, cf_truncate, genfunc_312, get_cf_spec, render_series
from mahonia.errors import MahoniaError

logger = logging.getLogger(__name__)

router = APIRouter(tags=["Series"])

@router.get("/cf/{which}", response_model=ContinuedFractionResponse)
def continued_fraction(which: str, order: int = Query(8, ge=0, le=30)):
    """Truncate cfrak1 or cfrak2 at z^order"""
    try:
        series = cf_truncate(get_cf_spec(which), order)
        return ContinuedFractionResponse(
            which=which,
            order=order,
            coefficients=[c.to_list() for c in series],
            series=render_series(series)
        )
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))

@router.post("/genfunc", response_model=GenfuncResponse)
def genfunc(request: GenfuncRequest):
    """
    Generating polynomial of a linear statistic over S_n(312)

    alpha: 13 or 11 coefficients in the documented pattern order, or a
    {pattern: coefficient} mapping
    """
    check_api_n(request.n)
    try:
        poly = genfunc_312(request.alpha, request.n)
        marginal = poly.substitute({"t": 1, "u": 1, "v": 1}).value_counts("q")
        logger.info("[API] genfunc n=%d with %d terms", request.n, len(poly.terms))
        return GenfuncResponse(
            n=request.n,
            polynomial=poly.render(),
            terms=[RefinedTerm(exponents=dict(mono), coefficient=c) for mono, c in sorted(poly.terms.items())],
            q_marginal=dict(sorted(marginal.items())),
            extension=alpha_is_extension(request.alpha)
        )
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))
