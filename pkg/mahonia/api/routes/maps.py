import logging
from fastapi import APIRouter, Depends, HTTPException
from mahonia.models import MapRequest, MapResponse
from mahonia.dependencies import get_bijection_service, check_api_n
from mahonia.services.bijection_service import BijectionService
from mahonia.errors import MahoniaError

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/map", tags=["Bijections"])

@router.get("")
def list_maps(bijection_service: BijectionService = Depends(get_bijection_service)):
    """Registered bijections with their source and target kinds"""
    return [
        {"name": e.name, "description": e.description, "source": e.source, "target": e.target,
         "invertible": e.inverse is not None}
        for e in (bijection_service.get(name) for name in bijection_service.names())
    ]

@router.post("", response_model=MapResponse)
def apply_map(
    request: MapRequest,
    bijection_service: BijectionService = Depends(get_bijection_service)
):
    """
    Apply a bijection by name

    - name: phi321, phi123, phi132, phi231, simion, gamma, delta231, delta312,
      delta132, psi, phipath, theta, lambda, omega, upsilon, invmad, ...
    - input: permutation ("341625978"), Dyck word ("UUDD") or polyomino ("NE/EN")
    """
    try:
        size = bijection_service.input_size(request.name, request.input, inverse=request.inverse)
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))
    check_api_n(size)
    try:
        output = bijection_service.apply(request.name, request.input, inverse=request.inverse)
        return MapResponse(name=request.name, input=request.input, output=output)
    except MahoniaError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("[API ERROR] map")
        raise HTTPException(status_code=500, detail=str(e))
