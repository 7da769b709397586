import logging
from fastapi import APIRouter, Depends, HTTPException
from mahonia.models import EquidistributionRequest, EquidistributionResponse, VerdictModel
from mahonia.dependencies import get_verifier_service, check_api_n
from mahonia.services.verifier_service import VerifierService
from mahonia.core.stats import parse
from mahonia.errors import MahoniaError
from mahonia.utils.pattern_parser import parse_pattern_set

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/equidistribution", tags=["Distributions"])

@router.post("", response_model=EquidistributionResponse)
def equidistribution(
    request: EquidistributionRequest,
    verifier_service: VerifierService = Depends(get_verifier_service)
):
    """
    Check Σ_{S_n(Π1)} q^{stat1} = Σ_{S_n(Π2)} q^{stat2} for n = 1..max_n

    Returns per-n verdicts with both coefficient lists.
    """
    check_api_n(request.max_n)
    try:
        result = verifier_service.check_equidistribution(
            parse(request.stat1),
            parse_pattern_set(request.avoid1),
            parse(request.stat2),
            parse_pattern_set(request.avoid2),
            request.max_n
        )
        logger.info("[API] equidistribution %s/%s vs %s/%s: %s",
                    result.stat1, result.avoid1, result.stat2, result.avoid2, result.holds)
        return EquidistributionResponse(
            stat1=result.stat1,
            avoid1=result.avoid1,
            stat2=result.stat2,
            avoid2=result.avoid2,
            holds=result.holds,
            first_disagreement=result.first_disagreement,
            verdicts=[
                VerdictModel(n=v.n, agree=v.agree, left=v.left.to_list(), right=v.right.to_list())
                for v in result.verdicts
            ]
        )
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("[API ERROR] equidistribution")
        raise HTTPException(status_code=500, detail=str(e))
