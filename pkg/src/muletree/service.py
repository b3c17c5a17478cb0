"""HTTP facade over the solver for programmatic clients.

Run with:  uvicorn muletree.service:app
"""

import math
from typing import List, Optional, Tuple

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .geom import GenParams, GenerationFailed, GraphError, generate_random_udg, make_graph
from .oracles import epsilon_estimate
from .tour import solution_cost
from .tree import build_gathering_tree, verify_solution, wac_bound

app = FastAPI(title="muletree", version="0.1.0")


class GenerateRequest(BaseModel):
    area: float = Field(gt=0, description="square deployment area (units^2)")
    density: float = Field(gt=0)
    seed: int
    max_rejections: int = 200


class GenerateResponse(BaseModel):
    n: int
    points: List[Tuple[float, float]]


class SolveRequest(BaseModel):
    points: List[Tuple[float, float]]
    rm: float = 0.2
    mule_policy: str = "full-scan"
    include_cost: bool = False


class VerifyRequest(BaseModel):
    points: List[Tuple[float, float]]
    rm: float = 0.2


class ConstantsResponse(BaseModel):
    rm: float
    n_r: int
    c1: float
    c: float


@app.get("/constants", response_model=ConstantsResponse)
def constants(rm: float = 0.2):
    try:
        k = wac_bound(rm)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return ConstantsResponse(rm=k.r_m, n_r=k.n_r, c1=k.c1, c=k.c)


@app.post("/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest):
    try:
        g = generate_random_udg(GenParams(
            area_side=math.sqrt(req.area), density=req.density,
            seed=req.seed, max_rejections=req.max_rejections,
        ))
    except GenerationFailed as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    except GraphError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return GenerateResponse(n=g.n, points=[tuple(p) for p in g.coords.tolist()])


def _graph_from(points):
    try:
        return make_graph(points)
    except GraphError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/solve")
def solve(req: SolveRequest):
    g = _graph_from(req.points)
    try:
        sol = build_gathering_tree(g, req.rm, mule_policy=req.mule_policy)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    payload = sol.to_json()
    eps = epsilon_estimate(g, sol.cds, sol.mule, wac_bound(req.rm).c)
    payload["epsilon_hat"] = eps.value
    if req.include_cost:
        total, _ = solution_cost(g, sol.tree, sol.mule)
        payload["cost"] = total
    return payload


@app.post("/verify")
def verify(req: VerifyRequest):
    g = _graph_from(req.points)
    try:
        sol = build_gathering_tree(g, req.rm)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    checks, report = verify_solution(g, sol)
    return {
        "checks": checks,
        "ok": all(checks.values()),
        "min_dual_slack": report.min_slack,
        "alpha": sol.alpha,
        "lower_bound": sol.lower_bound,
        "weight_cds": sol.weight_cds,
    }
