"""Local HTTP session service backing the interactive coefficient tuner.

One service instance hosts one analyst session: the extracted difference
context, the currently pending replacement coefficients, and a monotonically
increasing revision counter.  Reads are free; every mutation must quote the
revision it was based on and bumps it by one, so a stale client can never
silently clobber a newer edit (optimistic concurrency).  Committing writes
exactly the same bundle as the ``mask`` command.

The implementation is intentionally stdlib-only (``http.server``): the
service is a desk-scale, single-user tool.
"""

from __future__ import annotations

import json
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np

from .config import MaskingPlan
from .masking import (
    concentration_violations,
    extremum_report,
    remask,
    resolve_concentrations,
)
from .pipeline import Extraction, run_mask, write_mask_bundle
from .wavelet import approximate_from_coefficients, decompose

__all__ = ["MaskingSession", "StaleRevision", "make_server"]

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>groupmask session service</title></head>
<body><h1>groupmask session service</h1>
<p>No UI assets are installed. The JSON API is live:</p>
<ul><li>GET /api/state</li><li>POST /api/coefficients</li><li>POST /api/commit</li></ul>
</body></html>
"""


class StaleRevision(ValueError):
    def __init__(self, expected: int):
        self.expected = expected
        super().__init__(f"stale revision; current revision is {expected}")


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class MaskingSession:
    """Mutable session state; all mutations serialized by a lock."""

    def __init__(self, extraction: Extraction, outdir: str | Path):
        self._lock = threading.Lock()
        self.extraction = extraction
        self.outdir = Path(outdir)
        ctx = extraction.context
        self.revision = 0
        self.coeffs = decompose(ctx.delta, ctx.basis, ctx.level).approx
        self.alpha = 1.0
        self._evaluation = self._evaluate(self.coeffs, self.alpha)

    def _evaluate(self, coeffs: np.ndarray, alpha: float) -> dict:
        ctx = self.extraction.context
        delta_new = remask(ctx.delta, ctx.basis, ctx.level, coeffs)
        c1_new, c2_new = resolve_concentrations(ctx, delta_new, alpha, check=False)
        violations = concentration_violations(c1_new, c2_new)
        return {
            "delta_tilde": delta_new,
            "c1_tilde": c1_new,
            "c2_tilde": c2_new,
            "feasible": not violations,
            "violations": violations,
        }

    def state(self) -> dict:
        with self._lock:
            ctx = self.extraction.context
            dec = decompose(ctx.delta, ctx.basis, ctx.level)
            matrix_approx = self._approx(dec.approx)
            payload = {
                "revision": self.revision,
                "basis": ctx.basis.name,
                "level": ctx.level,
                "a_k": dec.approx,
                "delta": ctx.delta,
                "approx": matrix_approx,
                "details_sum": ctx.delta - matrix_approx,
                "extremums": [
                    {"index": i, "value": v}
                    for i, v in extremum_report(ctx.delta, self.extraction.config.top_extremums)
                ],
                "labels": list(self.extraction.config.parameter.order),
                "alpha": self.alpha,
                "a_tilde": self.coeffs,
            }
            payload.update(self._evaluation)
            return _jsonable(payload)

    def _approx(self, coeffs: np.ndarray) -> np.ndarray:
        ctx = self.extraction.context
        return approximate_from_coefficients(coeffs, ctx.basis, ctx.m)

    def set_coefficients(self, revision: int, a_tilde, alpha: float | None = None) -> dict:
        ctx = self.extraction.context
        coeffs = np.asarray(a_tilde, dtype=float)
        expected = ctx.m // (2**ctx.level)
        if coeffs.ndim != 1 or len(coeffs) != expected:
            raise ValueError(f"expected {expected} coefficients, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite numbers")
        with self._lock:
            if int(revision) != self.revision:
                raise StaleRevision(self.revision)
            self.alpha = self.alpha if alpha is None else float(alpha)
            self.coeffs = coeffs
            self._evaluation = self._evaluate(self.coeffs, self.alpha)
            self.revision += 1
            payload = {"revision": self.revision}
            payload.update(self._evaluation)
            return _jsonable(payload)

    def commit(self, revision: int) -> dict:
        with self._lock:
            if int(revision) != self.revision:
                raise StaleRevision(self.revision)
            if not self._evaluation["feasible"]:
                raise ValueError(
                    f"cannot commit an infeasible state; violations at "
                    f"{self._evaluation['violations']}"
                )
            ctx = self.extraction.context
            plan = MaskingPlan(
                basis=ctx.basis,
                level=ctx.level,
                alpha=self.alpha,
                seed=self.extraction.config.seed,
                coefficients=self.coeffs,
            )
            result = run_mask(self.extraction, plan)
            paths = write_mask_bundle(self.extraction, plan, result, self.outdir)
            return _jsonable({"revision": self.revision, "outputs": paths})


def _make_handler(session: MaskingSession, assets: Path | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args):  # silence per-request chatter
            pass

        def _send_json(self, payload: dict, status: HTTPStatus = HTTPStatus.OK) -> None:
            body = json.dumps(payload, sort_keys=True).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length) if length else b""
            try:
                doc = json.loads(raw.decode("utf-8")) if raw else {}
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise ValueError(f"request body is not valid JSON: {exc}") from None
            if not isinstance(doc, dict):
                raise ValueError("request body must be a JSON object")
            return doc

        def do_GET(self):
            if self.path == "/api/state":
                self._send_json(session.state())
                return
            self._serve_asset(self.path)

        def do_POST(self):
            try:
                doc = self._read_json()
                if self.path == "/api/coefficients":
                    if "revision" not in doc or "a_tilde" not in doc:
                        raise ValueError("payload needs 'revision' and 'a_tilde'")
                    payload = session.set_coefficients(
                        doc["revision"], doc["a_tilde"], doc.get("alpha")
                    )
                    self._send_json(payload)
                elif self.path == "/api/commit":
                    if "revision" not in doc:
                        raise ValueError("payload needs 'revision'")
                    self._send_json(session.commit(doc["revision"]))
                else:
                    self._send_json({"error": "not found"}, HTTPStatus.NOT_FOUND)
            except StaleRevision as exc:
                self._send_json(
                    {"error": str(exc), "revision": exc.expected}, HTTPStatus.CONFLICT
                )
            except (ValueError, TypeError) as exc:
                self._send_json({"error": str(exc)}, HTTPStatus.UNPROCESSABLE_ENTITY)

        def _serve_asset(self, path: str) -> None:
            name = path.split("?", 1)[0].lstrip("/") or "index.html"
            if assets is not None:
                target = (assets / name).resolve()
                if str(target).startswith(str(assets.resolve())) and target.is_file():
                    body = target.read_bytes()
                    ctype = {
                        ".html": "text/html; charset=utf-8",
                        ".js": "text/javascript; charset=utf-8",
                        ".mjs": "text/javascript; charset=utf-8",
                        ".css": "text/css; charset=utf-8",
                        ".svg": "image/svg+xml",
                        ".json": "application/json",
                    }.get(target.suffix, "application/octet-stream")
                    self.send_response(HTTPStatus.OK)
                    self.send_header("Content-Type", ctype)
                    self.send_header("Content-Length", str(len(body)))
                    self.end_headers()
                    self.wfile.write(body)
                    return
            if name == "index.html":
                body = _FALLBACK_PAGE.encode("utf-8")
                self.send_response(HTTPStatus.OK)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            self._send_json({"error": "not found"}, HTTPStatus.NOT_FOUND)

    return Handler


def default_assets_dir() -> Path | None:
    packaged = Path(__file__).parent / "_assets"
    return packaged if (packaged / "index.html").is_file() else None


def make_server(
    extraction: Extraction,
    port: int,
    outdir: str | Path,
    assets: str | Path | None = None,
) -> ThreadingHTTPServer:
    """Create (but do not start) the session server; raises ``OSError`` if
    the port is busy."""
    session = MaskingSession(extraction, outdir)
    assets_path = Path(assets) if assets is not None else default_assets_dir()
    handler = _make_handler(session, assets_path)
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.session = session  # type: ignore[attr-defined]
    return server
