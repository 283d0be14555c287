"""HTTP service wrapping the scheduling core.

Thin shell: payloads use the same documents as the file formats, jobs
run the same two-stage solve plus repair as the CLI, and verification
re-runs the independent verifier so externally edited grids stay
auditable.  State lives in memory; persistence is the caller's job.

Auth is a single shared bearer token (``WARDROSTER_TOKEN``, default
``local-dev-token``).
"""

from __future__ import annotations

import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from fastapi import Depends, FastAPI, HTTPException, Request, Response
from pydantic import BaseModel, Field

from . import dataio
from .domain import DomainError, PoolInstance
from .heuristic import DEFAULT_ITERATION_LIMIT, run_repair, swap_log_jsonl
from .stages import APPROXIMATE, EXACT, solve_two_stage
from .verify import parse_schedule, render_schedule, verify

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"
TIMED_OUT = "timed_out"

_MODES = {"approximate": APPROXIMATE, "approx": APPROXIMATE, "exact": EXACT}


class GenerateRequest(BaseModel):
    pool_id: str | None = None  # None = all pools
    mode: str = "approximate"
    time_limit_per_stage: float | None = None
    iteration_limit: int = Field(default=DEFAULT_ITERATION_LIMIT, ge=1)


class AvailabilityCell(BaseModel):
    nurse_id: str
    block: int = Field(ge=1)
    shift: int = Field(ge=1)
    score: int


@dataclass
class Job:
    id: str
    pool_id: str
    mode: str
    state: str = QUEUED
    error: str | None = None
    schedule_csv: str | None = None
    report: dict | None = None
    swaps_jsonl: str = ""


@dataclass
class Pool:
    id: str
    document: dict
    lock: threading.Lock = field(default_factory=threading.Lock)
    active_job: str | None = None


class Store:
    def __init__(self):
        self.pools: dict[str, Pool] = {}
        self.jobs: dict[str, Job] = {}
        self.mutex = threading.Lock()


def _validated(document: dict) -> PoolInstance:
    try:
        return dataio.instance_from_document(document)
    except DomainError as exc:
        detail: Any = str(exc)
        if isinstance(exc, dataio.LoadError):
            detail = {"code": exc.code, "location": exc.location, "message": str(exc)}
        raise HTTPException(status_code=422, detail=detail)


def create_app(token: str | None = None) -> FastAPI:
    token = token or os.environ.get("WARDROSTER_TOKEN", "local-dev-token")
    app = FastAPI(title="wardroster", version="1.0")
    store = Store()
    executor = ThreadPoolExecutor(max_workers=4)
    app.state.store = store

    def authed(request: Request) -> None:
        header = request.headers.get("authorization", "")
        if header != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="missing or invalid token")

    def get_pool(pool_id: str) -> Pool:
        pool = store.pools.get(pool_id)
        if pool is None:
            raise HTTPException(status_code=404, detail=f"no pool {pool_id!r}")
        return pool

    def reject_if_busy(pool: Pool) -> None:
        if pool.active_job is not None:
            job = store.jobs.get(pool.active_job)
            if job is not None and job.state in (QUEUED, RUNNING):
                raise HTTPException(
                    status_code=409,
                    detail=f"pool {pool.id!r} has a running generation job {job.id}",
                )

    @app.post("/pools", status_code=201, dependencies=[Depends(authed)])
    def create_pool(body: dict):
        pool_id = str(body.get("id") or uuid.uuid4())
        if pool_id in store.pools:
            raise HTTPException(status_code=409, detail=f"pool {pool_id!r} exists")
        document = body.get("document")
        if not isinstance(document, dict):
            raise HTTPException(status_code=422, detail="body must carry a 'document' object")
        _validated(document)
        store.pools[pool_id] = Pool(id=pool_id, document=document)
        return {"id": pool_id}

    @app.get("/pools", dependencies=[Depends(authed)])
    def list_pools():
        return [{"id": p.id, "nurses": len(p.document.get("nurses", []))} for p in store.pools.values()]

    @app.get("/pools/{pool_id}", dependencies=[Depends(authed)])
    def get_pool_doc(pool_id: str):
        return {"id": pool_id, "document": get_pool(pool_id).document}

    @app.put("/pools/{pool_id}", dependencies=[Depends(authed)])
    def replace_pool(pool_id: str, body: dict):
        pool = get_pool(pool_id)
        reject_if_busy(pool)
        document = body.get("document")
        if not isinstance(document, dict):
            raise HTTPException(status_code=422, detail="body must carry a 'document' object")
        _validated(document)
        pool.document = document
        return {"id": pool_id}

    @app.put("/pools/{pool_id}/employees", dependencies=[Depends(authed)])
    def put_employees(pool_id: str, body: dict):
        pool = get_pool(pool_id)
        reject_if_busy(pool)
        nurses = body.get("nurses")
        if not isinstance(nurses, list):
            raise HTTPException(status_code=422, detail="body must carry a 'nurses' list")
        candidate = dict(pool.document, nurses=nurses)
        _validated(candidate)
        pool.document = candidate
        return {"id": pool_id, "nurses": len(nurses)}

    @app.put("/pools/{pool_id}/availability", dependencies=[Depends(authed)])
    def put_availability(pool_id: str, cells: list[AvailabilityCell]):
        pool = get_pool(pool_id)
        reject_if_busy(pool)
        instance = _validated(pool.document)
        availability = {k: [list(row) for row in v] for k, v in pool.document["availability"].items()}
        for idx, cell in enumerate(cells):
            if cell.nurse_id not in availability:
                raise HTTPException(
                    status_code=422, detail=f"cells[{idx}]: unknown nurse {cell.nurse_id!r}"
                )
            if not (1 <= cell.block <= instance.r and 1 <= cell.shift <= instance.q):
                raise HTTPException(
                    status_code=422,
                    detail=f"cells[{idx}]: cell (shift {cell.shift}, block {cell.block}) outside grid",
                )
            if not 0 <= cell.score <= 3:
                raise HTTPException(
                    status_code=422,
                    detail=f"cells[{idx}]: score {cell.score} outside 0..3 at "
                    f"(nurse {cell.nurse_id}, shift {cell.shift}, block {cell.block})",
                )
            availability[cell.nurse_id][cell.block - 1][cell.shift - 1] = cell.score
        candidate = dict(pool.document, availability=availability)
        _validated(candidate)
        pool.document = candidate
        return {"id": pool_id, "updated": len(cells)}

    def run_job(job: Job, instance: PoolInstance, time_limit: float | None, iteration_limit: int):
        pool = store.pools[job.pool_id]
        try:
            job.state = RUNNING
            out1, out2 = solve_two_stage(
                instance, mode=job.mode, time_limit_per_stage=time_limit
            )
            if out1.schedule is None:
                job.state = TIMED_OUT
                return
            schedule = out2.schedule if out2 is not None and out2.schedule is not None else out1.schedule
            if job.mode == APPROXIMATE:
                res = run_repair(schedule, instance, iteration_limit)
                schedule = res.schedule
                job.swaps_jsonl = swap_log_jsonl(res.swap_log)
            report = verify(schedule, instance)
            job.schedule_csv = render_schedule(schedule, instance, report)
            job.report = dataio.report_to_document(report, schedule)
            job.state = DONE
        except Exception as exc:  # surfaced via the job record
            job.state = FAILED
            job.error = str(exc)
        finally:
            with store.mutex:
                if pool.active_job == job.id:
                    pool.active_job = None

    @app.post("/generate", status_code=202, dependencies=[Depends(authed)])
    def generate(body: GenerateRequest):
        if body.mode not in _MODES:
            raise HTTPException(status_code=422, detail=f"unknown mode {body.mode!r}")
        targets = list(store.pools.values()) if body.pool_id is None else [get_pool(body.pool_id)]
        if not targets:
            raise HTTPException(status_code=422, detail="no pools to schedule")
        jobs = []
        with store.mutex:
            for pool in targets:
                reject_if_busy(pool)
            for pool in targets:
                instance = _validated(pool.document)
                job = Job(id=str(uuid.uuid4()), pool_id=pool.id, mode=_MODES[body.mode])
                store.jobs[job.id] = job
                pool.active_job = job.id
                executor.submit(
                    run_job, job, instance, body.time_limit_per_stage, body.iteration_limit
                )
                jobs.append(job.id)
        return {"jobs": jobs}

    @app.get("/jobs/{job_id}", dependencies=[Depends(authed)])
    def job_status(job_id: str):
        job = store.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no job {job_id!r}")
        return {
            "id": job.id,
            "pool_id": job.pool_id,
            "mode": job.mode,
            "state": job.state,
            "error": job.error,
            "verdict": job.report["verdict"] if job.report else None,
        }

    def finished_job(job_id: str) -> Job:
        job = store.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no job {job_id!r}")
        if job.state == TIMED_OUT:
            # The time-limit contract: no schedule is provided.
            raise HTTPException(status_code=410, detail="job timed out; no schedule was produced")
        if job.state != DONE:
            raise HTTPException(status_code=409, detail=f"job is {job.state}")
        return job

    @app.get("/jobs/{job_id}/schedule", dependencies=[Depends(authed)])
    def job_schedule(job_id: str):
        return Response(content=finished_job(job_id).schedule_csv, media_type="text/csv")

    @app.get("/jobs/{job_id}/report", dependencies=[Depends(authed)])
    def job_report(job_id: str):
        return finished_job(job_id).report

    @app.get("/jobs/{job_id}/swaps", dependencies=[Depends(authed)])
    def job_swaps(job_id: str):
        return Response(content=finished_job(job_id).swaps_jsonl, media_type="application/jsonl")

    @app.post("/pools/{pool_id}/verify", dependencies=[Depends(authed)])
    def verify_schedule(pool_id: str, body: dict):
        pool = get_pool(pool_id)
        instance = _validated(pool.document)
        csv_text = body.get("schedule_csv")
        if not isinstance(csv_text, str):
            raise HTTPException(status_code=422, detail="body must carry 'schedule_csv'")
        try:
            schedule = parse_schedule(csv_text, instance)
        except (DomainError, ValueError, IndexError) as exc:
            raise HTTPException(status_code=422, detail=f"unparseable schedule: {exc}")
        report = verify(schedule, instance)
        return dataio.report_to_document(report, schedule)

    return app


app = create_app()
