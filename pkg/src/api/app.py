"""
FastAPI application for the causal reasoning service

Exposes the query operations of the `causal` CLI over HTTP. Models and
signatures travel as text in the model file format.
"""

import logging
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from src import config
from src.causal.classes import ModelClass, is_recursive, is_unique_solutions
from src.causal.errors import BudgetExceeded, CausalError, InvalidIntervention
from src.causal.model import solve
from src.causal.model_io import dump_model, load_model, load_signature
from src.cli import parse_context, parse_intervention
from src.logic.parser import parse
from src.logic.printer import print_formula
from src.logic.transform import classify_language
from src.tools.enum_sat_solver import sat, valid
from src.tools.model_checker import affects, evaluate
from src.utils.logging_setup import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Causal Reasoning API",
    description="Model checking, satisfiability and validity over finite structural-equation models",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

ENDPOINTS = {
    "parse": "/api/parse",
    "solve": "/api/solve",
    "check": "/api/check",
    "classify": "/api/classify",
    "affects": "/api/affects",
    "sat": "/api/sat",
    "valid": "/api/valid",
    "docs": "/docs",
}


# ==================== REQUEST / RESPONSE MODELS ====================
class ParseRequest(BaseModel):
    signature_text: str = Field(..., description=".sig or .model text")
    formula: str


class ParseResponse(BaseModel):
    canonical: str
    language_class: str


class SolveRequest(BaseModel):
    model_text: str
    intervention: str = Field("", description='e.g. "X<-1;Y<-0"')
    context: str = Field("", description='e.g. "0,1"')


class SolveResponse(BaseModel):
    solutions: List[Dict[str, str]]


class CheckRequest(BaseModel):
    model_text: str
    formula: str


class CheckResponse(BaseModel):
    holds: bool


class ClassifyRequest(BaseModel):
    model_text: str


class ClassifyResponse(BaseModel):
    recursive: bool
    order: Optional[List[str]] = None
    unique_solutions: bool


class AffectsRequest(BaseModel):
    model_text: str
    cause: str
    effect: str


class AffectsResponse(BaseModel):
    affects: bool
    witness: Optional[str] = None


class DecideRequest(BaseModel):
    signature_text: str
    formula: str
    model_class: str = "ALL"
    budget: Optional[int] = Field(None, gt=0)


class DecideResponse(BaseModel):
    verdict: str
    witness_model_text: Optional[str] = None


# ==================== HELPERS ====================
def _budget(requested: Optional[int]) -> int:
    return config.DEFAULT_BUDGET if requested is None else requested


def _run(operation: str, fn):
    """Call fn, translating library errors into HTTP errors."""
    try:
        return fn()
    except HTTPException:
        raise
    except BudgetExceeded as e:
        logger.warning(f"⚠️ {operation}: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except (CausalError, ValueError) as e:
        logger.info(f"❌ {operation}: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception(f"❌ {operation} failed")
        raise HTTPException(status_code=500, detail=f"Internal error: {str(e)}")


# ==================== HEALTH CHECK ====================
@app.get("/")
def root():
    """Health check endpoint"""
    return {
        "status": "online",
        "message": "Causal Reasoning API is running",
        "endpoints": ENDPOINTS,
    }


@app.get("/health")
def health():
    """Detailed health check"""
    return {
        "status": "healthy",
        "default_budget": config.DEFAULT_BUDGET,
        "parallel": config.DEFAULT_PARALLEL,
        "endpoints": ENDPOINTS,
    }


# ==================== FORMULAS ====================
@app.post("/api/parse", response_model=ParseResponse)
def parse_formula(request: ParseRequest) -> ParseResponse:
    """Canonical text and language class of a formula."""

    def run():
        sig = load_signature(request.signature_text, "<request>")
        f = parse(request.formula, sig)
        return ParseResponse(canonical=print_formula(f), language_class=classify_language(f).value)

    return _run("parse", run)


# ==================== MODELS ====================
@app.post("/api/solve", response_model=SolveResponse)
def solve_submodel(request: SolveRequest) -> SolveResponse:
    def run():
        model = load_model(request.model_text, "<request>")
        sig = model.signature
        iv = parse_intervention(request.intervention, sig)
        u = parse_context(request.context, sig)
        result = solve(model, iv, u, config.DEFAULT_BUDGET)
        return SolveResponse(solutions=[s.as_dict() for s in result])

    return _run("solve", run)


@app.post("/api/check", response_model=CheckResponse)
def check_formula(request: CheckRequest) -> CheckResponse:
    def run():
        model = load_model(request.model_text, "<request>")
        f = parse(request.formula, model.signature)
        return CheckResponse(holds=evaluate(model, f))

    return _run("check", run)


@app.post("/api/classify", response_model=ClassifyResponse)
def classify_model(request: ClassifyRequest) -> ClassifyResponse:
    """REC membership (with an order) and unique-solution membership."""

    def run():
        model = load_model(request.model_text, "<request>")
        order = is_recursive(model)
        return ClassifyResponse(
            recursive=order is not None,
            order=list(order) if order is not None else None,
            unique_solutions=is_unique_solutions(model),
        )

    return _run("classify", run)


@app.post("/api/affects", response_model=AffectsResponse)
def check_affects(request: AffectsRequest) -> AffectsResponse:
    def run():
        model = load_model(request.model_text, "<request>")
        for name in (request.cause, request.effect):
            if not model.signature.is_endogenous(name):
                raise InvalidIntervention(f"{name!r} is not an endogenous variable")
        witness = affects(model, request.cause, request.effect)
        if witness is None:
            return AffectsResponse(affects=False)
        return AffectsResponse(affects=True, witness=witness.describe(request.cause, request.effect))

    return _run("affects", run)


# ==================== DECISION PROCEDURES ====================
@app.post("/api/sat", response_model=DecideResponse)
def check_sat(request: DecideRequest) -> DecideResponse:
    """Satisfiability in REC, UNIQ or ALL; SAT comes with a witness model."""

    def run():
        sig = load_signature(request.signature_text, "<request>")
        f = parse(request.formula, sig)
        logger.info(f"🔍 sat in {request.model_class}: {request.formula}")
        witness = sat(f, sig, ModelClass.parse(request.model_class), _budget(request.budget))
        text = dump_model(witness.model) if witness.model is not None else None
        return DecideResponse(verdict=witness.verdict.value, witness_model_text=text)

    return _run("sat", run)


@app.post("/api/valid", response_model=DecideResponse)
def check_valid(request: DecideRequest) -> DecideResponse:
    """Validity in REC, UNIQ or ALL; INVALID comes with a countermodel."""

    def run():
        sig = load_signature(request.signature_text, "<request>")
        f = parse(request.formula, sig)
        logger.info(f"🔍 valid in {request.model_class}: {request.formula}")
        result = valid(f, sig, ModelClass.parse(request.model_class), _budget(request.budget))
        text = dump_model(result.countermodel) if result.countermodel is not None else None
        return DecideResponse(verdict="VALID" if result.valid else "INVALID", witness_model_text=text)

    return _run("valid", run)
