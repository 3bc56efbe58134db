"""FastAPI application wrapping the analysis pipeline.

Configuration problems map to 422, data problems to 400. Degenerate
statistics are not an error here; they come back in the warnings list.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..datagen import GenSpec, generate
from ..errors import ConfigError, DataError
from ..fileio import (
    comparison_to_dict,
    dataset_from_mapping,
    dataset_to_mapping,
    report_to_dict,
)
from ..neighborhood import ConnectionNetwork
from ..pipeline import RunConfig, analyze
from .schemas import (
    AnalysisRequest,
    AnalysisResponse,
    ComparisonOut,
    Edge,
    GenerateRequest,
    GenerateResponse,
    ReportOut,
)


def _run_analysis(request: AnalysisRequest) -> AnalysisResponse:
    dataset = dataset_from_mapping(request.dataset, source="dataset")
    network: Optional[ConnectionNetwork] = None
    if request.network is not None:
        network = ConnectionNetwork(
            (edge.from_id, edge.to_id, edge.cost) for edge in request.network
        )
    config = RunConfig(
        dataset="<request>",
        attribute=request.attribute,
        models=tuple(request.models),
        strategy=request.strategy,
        alpha=request.alpha,
        beta=request.beta,
        delta=request.delta,
        radius=request.radius,
        cost_limit=request.cost_limit,
        polygon_mode=request.polygon_mode,
        theta=request.theta,
    )
    result = analyze(config, dataset, network)
    return AnalysisResponse(
        reports=[ReportOut(**report_to_dict(r)) for r in result.reports.values()],
        comparisons=[ComparisonOut(**comparison_to_dict(c)) for c in result.comparisons],
        warnings=list(result.warnings),
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="spatial-outliers",
        description="Spatial outlier detection over weighted neighborhoods.",
        version="0.1.0",
    )

    @app.exception_handler(ConfigError)
    async def _on_config_error(_: Request, err: ConfigError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(err)})

    @app.exception_handler(DataError)
    async def _on_data_error(_: Request, err: DataError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(err)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/detect", response_model=AnalysisResponse)
    def detect(request: AnalysisRequest) -> AnalysisResponse:
        return _run_analysis(request)

    @app.post("/compare", response_model=AnalysisResponse)
    def compare(request: AnalysisRequest) -> AnalysisResponse:
        if len(request.models) < 2:
            raise ConfigError("compare needs at least two models")
        return _run_analysis(request)

    @app.post("/generate", response_model=GenerateResponse)
    def generate_data(request: GenerateRequest) -> GenerateResponse:
        spec = GenSpec(
            kind=request.kind,
            rows=request.rows,
            cols=request.cols,
            n_points=request.n_points,
            extent=request.extent,
            cell_size=request.cell_size,
            smoothing=request.smoothing,
            planted=tuple((p.index, p.sigmas) for p in request.planted),
            seed=request.seed,
            attribute=request.attribute,
        )
        data = generate(spec)
        return GenerateResponse(
            dataset=dataset_to_mapping(data.dataset),
            network=[Edge(from_id=s, to_id=d, cost=c) for s, d, c in data.network.edges],
            planted_ids=list(data.planted_ids),
        )

    return app
