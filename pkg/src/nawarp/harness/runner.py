"""Scenario execution and report emission.

Scenarios run independently (optionally in a thread pool); every check
failure, including an unexpected exception, becomes a failed record
rather than a crash.  Reports are deterministic for a fixed config and
seed once timing fields are stripped.
"""

import concurrent.futures
import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from nawarp import __version__
from nawarp.harness import checks as checks_mod
from nawarp.harness.config import ConfigError

log = logging.getLogger("nawarp.harness")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INCONCLUSIVE = 3


@dataclass(frozen=True)
class CheckRecord:
    scenario: str
    check_id: str
    anchor: str
    residual: float
    tolerance: float
    verdict: str
    seconds: float
    note: str = ""


@dataclass
class Report:
    version: str
    config_digest: str
    records: list = field(default_factory=list)
    scans: dict = field(default_factory=dict)

    @property
    def summary(self):
        verdicts = [r.verdict for r in self.records]
        return {
            "total": len(verdicts),
            "passed": verdicts.count("pass"),
            "failed": verdicts.count("fail"),
            "inconclusive": verdicts.count("inconclusive"),
        }

    @property
    def exit_code(self):
        s = self.summary
        if s["failed"]:
            return EXIT_FAIL
        if s["inconclusive"]:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS


def config_digest(scenarios):
    blob = repr(sorted((s.name, repr(s)) for s in scenarios)).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _run_scenario(sc, seed_override, fail_fast):
    records = []
    scans = {}
    seed = seed_override if seed_override is not None else sc.seed
    for cdef in checks_mod.checks_for(sc.module):
        # stable per-check stream: builtin hash() is salted per process
        check_key = int.from_bytes(
            hashlib.sha256(cdef.check_id.encode()).digest()[:4], "big"
        )
        rng = np.random.default_rng([seed, check_key])
        tol = sc.tolerances.get(cdef.check_id, cdef.tolerance)
        t0 = time.perf_counter()
        note = ""
        try:
            residual = float(cdef.func(sc, rng))
            if cdef.check_id == "wedge.verdict":
                scan = checks_mod._wedge_verdict.scans.pop(sc.name, None)
                if scan is not None:
                    scans[sc.name] = scan
            if np.isnan(residual):
                verdict, note = "inconclusive", "residual is NaN"
            elif residual <= tol:
                verdict = "pass"
            else:
                verdict = "fail"
        except Exception as exc:  # noqa: BLE001 - every panic becomes a record
            residual = float("inf")
            verdict = "fail"
            note = f"{type(exc).__name__}: {exc}"
            log.exception("check %s raised", cdef.check_id)
        seconds = time.perf_counter() - t0
        records.append(
            CheckRecord(
                scenario=sc.name,
                check_id=cdef.check_id,
                anchor=cdef.anchor,
                residual=residual,
                tolerance=tol,
                verdict=verdict,
                seconds=seconds,
                note=note,
            )
        )
        log.info("%s %s %s %.3e", sc.name, cdef.check_id, verdict, residual)
        if fail_fast and verdict == "fail":
            break
    return records, scans


def run(scenarios, jobs=1, seed_override=None, fail_fast=False):
    """Execute all checks of all scenarios and aggregate the records."""
    report = Report(version=__version__, config_digest=config_digest(scenarios))
    if jobs <= 1:
        results = [_run_scenario(sc, seed_override, fail_fast) for sc in scenarios]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda sc: _run_scenario(sc, seed_override, fail_fast), scenarios)
            )
    for records, scans in results:
        report.records.extend(records)
        report.scans.update(scans)
    report.records.sort(key=lambda r: (r.scenario, r.check_id))
    return report


def report_body(report):
    """The deterministic portion of the report (timing stripped)."""
    return {
        "version": report.version,
        "config_digest": report.config_digest,
        "records": [
            {
                "scenario": r.scenario,
                "check_id": r.check_id,
                "anchor": r.anchor,
                "residual": None if np.isinf(r.residual) else float(r.residual),
                "tolerance": r.tolerance,
                "verdict": r.verdict,
                "note": r.note,
            }
            for r in report.records
        ],
        "summary": report.summary,
    }


def render_json(report):
    body = report_body(report)
    body["timing"] = {
        f"{r.scenario}/{r.check_id}": round(r.seconds, 4) for r in report.records
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def render_text(report):
    rows = [("scenario", "check", "verdict", "residual", "tolerance")]
    for r in report.records:
        rows.append(
            (
                r.scenario,
                r.check_id,
                r.verdict,
                f"{r.residual:.3e}",
                f"{r.tolerance:.1e}",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    s = report.summary
    lines.append(
        f"{s['passed']}/{s['total']} passed, {s['failed']} failed, "
        f"{s['inconclusive']} inconclusive"
    )
    return "\n".join(lines) + "\n"


def emit_report(report, formats, out_dir):
    """Write the requested report files; returns the list of paths."""
    from nawarp.wedge import export_kernel_csv

    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        if "json" in formats:
            path = out_dir / "report.json"
            path.write_text(render_json(report))
            written.append(path)
        if "text" in formats:
            path = out_dir / "report.txt"
            path.write_text(render_text(report))
            written.append(path)
        if "csv" in formats:
            for name, scan in report.scans.items():
                path = out_dir / f"kernel_{name}.csv"
                export_kernel_csv(path, scan)
                written.append(path)
        return written
    except OSError as exc:
        raise ConfigError(f"cannot write reports to {out_dir}: {exc}") from exc
