import logging
from fastapi import APIRouter, Depends, HTTPException
from mahonia.models import DistributionRequest, DistributionResponse, RefinedTerm
from mahonia.dependencies import get_distribution_service, check_api_n
from mahonia.services.distribution_service import DistributionService
from mahonia.core.stats import parse, parse_marks
from mahonia.errors import MahoniaError
from mahonia.utils.pattern_parser import parse_pattern_set

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/distribution", tags=["Distributions"])

@router.post("", response_model=DistributionResponse)
def distribution(
    request: DistributionRequest,
    distribution_service: DistributionService = Depends(get_distribution_service)
):
    """
    Exact distribution of a statistic over S_n(Π)

    - stat: catalog name (maj, inv, mak, ..., den, head, iota:k) or lin: literal
    - avoid: comma-separated patterns, "all3" or empty
    - marks: optional refinement variables
    """
    check_api_n(request.n)
    try:
        spec = parse(request.stat)
        patterns = parse_pattern_set(request.avoid)
        logger.info("[API] distribution %s over S_%d(%s)", spec, request.n, request.avoid)
        poly = distribution_service.distribution(spec, patterns, request.n)
        refined = None
        if request.marks:
            marks = parse_marks(",".join(request.marks))
            multi = distribution_service.distribution_refined(spec, patterns, request.n, marks)
            refined = [RefinedTerm(exponents=dict(mono), coefficient=c) for mono, c in sorted(multi.terms.items())]
        return DistributionResponse(
            stat=spec.canonical(),
            avoid=",".join(str(p) for p in patterns),
            n=request.n,
            coefficients=poly.to_list(),
            polynomial=poly.render(),
            refined=refined
        )
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("[API ERROR] distribution")
        raise HTTPException(status_code=500, detail=str(e))
