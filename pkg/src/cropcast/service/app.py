"""HTTP facade: ingest readings, serve ranked predictions, expose the chain.

All endpoints live under /api/v1. The model is shared immutable; chain
writes are serialized through one lock. When a built web console exists at
the configured static directory it is served from /.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from ..dataset import FEATURE_NAMES, SensorReading
from ..errors import CropcastError, LedgerError, PredictionIndexError
from ..ledger.chain import Chain, ChainConfig, get_prediction, submit_prediction, to_hex, verify_chain
from ..ledger.codec import FIXED_POINT_SCALE, PredictionRecord
from ..ledger.store import ChainStore

logger = logging.getLogger(__name__)
from ..models import TrainedModel, predict_topk
from ..telemetry import (
    DEFAULT_RULE_INTERVALS,
    Rejection,
    SensorMessage,
    ValidationRule,
    validate_message,
)


@dataclass
class ServiceConfig:
    model_path: str
    chain_path: str
    default_k: int = 3
    static_dir: str | None = None
    report_path: str | None = None
    chain_config: ChainConfig | None = None  # gas limits etc. for a fresh chain


def _fixed2(value: int) -> str:
    return f"{value / FIXED_POINT_SCALE:.2f}"


def render_record(rec: PredictionRecord, index: int) -> dict:
    reals = rec.as_reals()
    return {
        "index": index,
        "cropName": rec.crop_name,
        **{name: _fixed2(getattr(rec, name)) for name in ("n", "p", "k", "ph", "rain", "temp", "hum")},
        "raw": {name: getattr(rec, name) for name in ("n", "p", "k", "ph", "rain", "temp", "hum")},
        "values": reals,
    }


def render_block_summary(chain: Chain, number: int) -> dict:
    block = chain.blocks[number]
    return {
        "number": block.number,
        "timestamp": block.timestamp,
        "hash": to_hex(block.hash),
        "gas_used": block.gas_used,
        "gas_limit": block.gas_limit,
        "tx_count": len(block.transactions),
    }


def _error(status: int, detail: Any) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": detail})


def create_app(
    config: ServiceConfig,
    model: TrainedModel | None = None,
    store: ChainStore | None = None,
) -> FastAPI:
    from ..models import load_model

    app = FastAPI(title="cropcast", docs_url=None, redoc_url=None)
    model = model if model is not None else load_model(config.model_path)
    store = store if store is not None else ChainStore(config.chain_path, config.chain_config)
    rules = ValidationRule()
    write_lock = threading.Lock()
    state = {"rejected_messages": 0}
    app.state.model = model
    app.state.store = store

    def _validate_features(features: dict) -> SensorReading | JSONResponse:
        missing = [n for n in FEATURE_NAMES if n not in features]
        if missing:
            return _error(422, {"errors": [{"field": n, "code": "MISSING"} for n in missing]})
        try:
            numeric = {n: float(features[n]) for n in FEATURE_NAMES}
        except (TypeError, ValueError):
            bad = [n for n in FEATURE_NAMES if not isinstance(features.get(n), (int, float))]
            return _error(422, {"errors": [{"field": n, "code": "NON_FINITE"} for n in bad]})
        probe = SensorMessage(device_id="api", timestamp=1, **numeric)
        checked = validate_message(probe, rules)
        if isinstance(checked, Rejection):
            return _error(422, {"errors": checked.codes()})
        return checked

    def _record_on_chain(reading: SensorReading, crop: str) -> dict:
        rec = PredictionRecord.from_reading(crop, reading)
        with write_lock:
            tip_ts = store.chain.tip.timestamp
            receipt = submit_prediction(store.chain, rec, max(int(time.time()), tip_ts))
            store.append_tip()
        return {
            "tx_hash": to_hex(receipt.tx_hash),
            "block_number": receipt.block_number,
            "prediction_index": receipt.prediction_index,
        }

    def _predict_payload(reading: SensorReading, k: int, record: bool) -> dict:
        ranked = predict_topk(model, reading, k)
        payload: dict[str, Any] = {
            "predictions": [{"crop": r.label, "score": r.score} for r in ranked],
            "transaction": None,
        }
        if record:
            try:
                payload["transaction"] = _record_on_chain(reading, ranked[0].label)
            except LedgerError as exc:
                payload["transaction"] = {"error": str(exc)}
        return payload

    @app.post("/api/v1/predict")
    async def handle_predict(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or not isinstance(body.get("features"), dict):
            return _error(422, {"errors": [{"field": "features", "code": "MISSING"}]})
        k = body.get("k", config.default_k)
        record = bool(body.get("record", False))
        if not isinstance(k, int) or not 1 <= k <= len(model.labels):
            return _error(422, {"errors": [{"field": "k", "code": "K_RANGE"}]})
        checked = _validate_features(body["features"])
        if isinstance(checked, JSONResponse):
            return checked
        return _predict_payload(checked, k, record)

    @app.post("/api/v1/ingest")
    async def handle_ingest(request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            return _error(422, {"errors": [{"field": "body", "code": "MISSING"}]})
        for field in ("device_id", "timestamp"):
            if field not in body:
                return _error(422, {"errors": [{"field": field, "code": "MISSING"}]})
        checked = _validate_features({n: body.get(n) for n in FEATURE_NAMES})
        if isinstance(checked, JSONResponse):
            state["rejected_messages"] += 1
            logger.warning(
                "rejected message from %s (total rejected: %d)",
                body.get("device_id"),
                state["rejected_messages"],
            )
            return checked
        # sensor-derived predictions are always recorded
        payload = _predict_payload(checked, config.default_k, record=True)
        payload["device_id"] = body["device_id"]
        return payload

    @app.get("/api/v1/predictions/{index}")
    def handle_get_prediction(index: int):
        try:
            rec = get_prediction(store.chain, index)
        except PredictionIndexError:
            return _error(404, f"no prediction at index {index}")
        return render_record(rec, index)

    @app.get("/api/v1/chain/blocks")
    def handle_chain_blocks(
        from_: int | None = Query(default=None, alias="from"),
        limit: int = Query(default=20, ge=1, le=500),
    ):
        chain = store.chain
        tip = chain.height()
        start = tip if from_ is None else from_
        if start < 0 or start > tip:
            return {"blocks": [], "height": tip}
        numbers = range(start, max(start - limit, -1), -1)
        return {"blocks": [render_block_summary(chain, n) for n in numbers], "height": tip}

    @app.get("/api/v1/chain/verify")
    def handle_verify():
        result = verify_chain(store.chain)
        if result.ok:
            return {"ok": True}
        return {"ok": False, "block_number": result.block_number, "reason": result.reason}

    @app.get("/api/v1/report")
    def handle_report():
        path = Path(config.report_path) if config.report_path else None
        if path is None or not path.exists():
            return _error(404, "no benchmark report; run `cropcast bench` first")
        return FileResponse(path, media_type="application/json")

    @app.get("/api/v1/health")
    def handle_health():
        return {
            "status": "ok",
            "model_kind": model.kind,
            "labels": len(model.labels),
            "chain_height": store.chain.height(),
            "predictions": len(store.chain.contract_state),
            "rejected_messages": state["rejected_messages"],
            "validation_rules": {k: list(v) for k, v in DEFAULT_RULE_INTERVALS.items()},
        }

    @app.exception_handler(CropcastError)
    async def on_cropcast_error(_request, exc: CropcastError):
        return _error(400, str(exc))

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="console")

    return app
