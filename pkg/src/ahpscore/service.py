"""HTTP facade for elicitation sessions with live consistency feedback.

Sessions start as drafts with all-ones (neutral) matrices. Every cell edit
returns the recomputed consistency indices for that matrix so the expert can
revise immediately. Finalizing freezes the session, runs the group pipeline
over the supplied measurements and persists the results document.

Sessions are file-backed JSON documents; per-session mutations are serialized
through a lock, and every mutation bumps a version counter returned to the
client (last write wins per cell).
"""

from __future__ import annotations

import threading
import uuid
from collections import defaultdict
from pathlib import Path

import numpy as np
from fastapi import Body, FastAPI, HTTPException

from . import dataio
from .errors import AhpError, ValidationError
from .hierarchy import ExpertJudgment
from .matrices import PairwiseMatrix, consistency_report
from .scoring import score_cohort

DRAFT = "draft"
FINALIZED = "finalized"


def _report_payload(report) -> dict:
    return {
        "lambda_max": report.lambda_max,
        "ci": report.ci,
        "ri": report.ri,
        "cr": report.cr,
        "gci": report.gci,
        "cr_accepted": report.cr_accepted,
        "alonso_lamata_accepted": report.alonso_lamata_accepted,
    }


class SessionStore:
    """File-backed session documents with per-session write locks."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks[session_id]

    def path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def load(self, session_id: str) -> dict:
        p = self.path(session_id)
        if not p.exists():
            raise HTTPException(404, f"unknown session {session_id!r}")
        return dataio.read_json(p)

    def save(self, doc: dict):
        dataio.write_json(self.path(doc["session_id"]), doc)


def _draft_matrices(hierarchy) -> dict[str, list]:
    mats = {"criteria": np.ones((hierarchy.k, hierarchy.k)).tolist()}
    for c, m in zip(hierarchy.criteria, hierarchy.sizes):
        if m >= 2:
            mats[c.id] = np.ones((m, m)).tolist()
    return mats


def _judgments_from_session(doc: dict) -> tuple[list[ExpertJudgment], object]:
    hierarchy = dataio.hierarchy_from_doc(doc["hierarchy"])
    judgments = []
    for eid in doc["experts"]:
        mats = doc["matrices"][eid]
        indicator_matrices = {
            cid: PairwiseMatrix(np.array(rows))
            for cid, rows in mats.items()
            if cid != "criteria"
        }
        judgments.append(
            ExpertJudgment(eid, PairwiseMatrix(np.array(mats["criteria"])), indicator_matrices)
        )
    return judgments, hierarchy


def create_app(storage_dir: str | Path) -> FastAPI:
    app = FastAPI(title="ahpscore service")
    store = SessionStore(storage_dir)

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        try:
            hierarchy = dataio.hierarchy_from_doc(body.get("hierarchy"))
        except ValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "diagnostics": exc.diagnostics})
        experts = body.get("experts") or ["expert-1"]
        if len(set(experts)) != len(experts):
            raise HTTPException(400, "duplicate expert ids")
        session_id = uuid.uuid4().hex
        doc = {
            "schema": dataio.SCHEMA,
            "kind": "session",
            "session_id": session_id,
            "status": DRAFT,
            "auto_reciprocal": bool(body.get("auto_reciprocal", True)),
            "version": 0,
            "hierarchy": dataio.hierarchy_to_doc(hierarchy),
            "experts": list(experts),
            "matrices": {eid: _draft_matrices(hierarchy) for eid in experts},
            "results": None,
        }
        store.save(doc)
        return {"session_id": session_id, "version": 0}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        doc = store.load(session_id)
        return {k: v for k, v in doc.items() if k != "results"}

    @app.put("/sessions/{session_id}/experts/{expert_id}/matrices/{matrix_id}/cells")
    def put_judgment(session_id: str, expert_id: str, matrix_id: str, body: dict = Body(...)):
        with store.lock(session_id):
            doc = store.load(session_id)
            if doc["status"] == FINALIZED:
                raise HTTPException(409, "session is finalized and immutable")
            if expert_id not in doc["matrices"]:
                raise HTTPException(404, f"unknown expert {expert_id!r}")
            if matrix_id not in doc["matrices"][expert_id]:
                raise HTTPException(404, f"unknown matrix {matrix_id!r}")
            rows = doc["matrices"][expert_id][matrix_id]
            n = len(rows)
            try:
                i, j = int(body["i"]), int(body["j"])
                value = dataio.parse_entry(body["value"])
            except (KeyError, TypeError, ValueError, ValidationError):
                raise HTTPException(400, "body must carry integer 'i', 'j' and a positive 'value'")
            if not (0 <= i < n and 0 <= j < n):
                raise HTTPException(400, f"cell ({i},{j}) outside {n}x{n} matrix")
            if i == j:
                raise HTTPException(400, "diagonal cells are fixed at 1")
            if not value > 0:
                raise HTTPException(400, f"judgment value must be positive, got {value}")
            rows[i][j] = value
            if doc["auto_reciprocal"]:
                rows[j][i] = 1.0 / value
            doc["version"] += 1
            store.save(doc)
            report = consistency_report(PairwiseMatrix(np.array(rows)))
            return {
                "version": doc["version"],
                "matrix": rows,
                "consistency": _report_payload(report),
            }

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str, body: dict = Body(...)):
        with store.lock(session_id):
            doc = store.load(session_id)
            if doc["status"] == FINALIZED:
                raise HTTPException(409, "session already finalized")
            try:
                judgments, hierarchy = _judgments_from_session(doc)
                csv_text = body.get("measurements_csv")
                if not csv_text:
                    raise ValidationError("body must carry 'measurements_csv'")
                measurements = dataio.measurements_from_csv(csv_text, hierarchy)
                result = score_cohort(
                    hierarchy, judgments, measurements,
                    convention=body.get("ecdf", "standard"),
                    seed=int(body.get("seed", 0)),
                )
            except ValidationError as exc:
                raise HTTPException(400, {"message": str(exc), "diagnostics": exc.diagnostics})
            except AhpError as exc:
                raise HTTPException(500, str(exc))
            doc["status"] = FINALIZED
            doc["version"] += 1
            doc["results"] = dataio.results_to_doc(
                result, params={"session_id": session_id, "experts": doc["experts"]}
            )
            store.save(doc)
            return doc["results"]

    @app.get("/sessions/{session_id}/results")
    def get_results(session_id: str):
        doc = store.load(session_id)
        if doc["status"] != FINALIZED or doc["results"] is None:
            raise HTTPException(404, "session has no results yet")
        return doc["results"]

    return app
