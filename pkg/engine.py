"""
Invariant orchestrator.
Runs mrk, the BEL-rank triple and nuclei over single inputs and directories.
"""
import csv
import io
import json
import time
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional
import logging

from tqdm import tqdm

from config import settings
from core import SemifieldError, is_semifield, read_algebra
from core.errors import NotASemifieldError
from core.belrank import bel_triple, mrk
from core.semifield import SemifieldCoeffs, nuclei
from models import BatchReport, InvariantRecord, RecordStatus

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[float, str], None]

CSV_COLUMNS = [
    "id", "p", "e", "n", "mrk", "brk", "brk_d", "brk_dt", "nuclei", "certificate",
    "witness", "candidates", "millis", "label", "flags", "status", "error",
]


class InvariantEngine:
    """
    Computes invariant records.
    Search options left as None fall back to `settings`.
    """

    def __init__(self, mode: Optional[str] = None, budget: Optional[int] = None,
                 seed: Optional[int] = None, threads: Optional[int] = None,
                 early_exit: Optional[bool] = None, force: bool = False,
                 include_timing: Optional[bool] = None):
        self.mode = mode or settings.search_mode
        self.budget = settings.search_budget if budget is None else budget
        self.seed = settings.search_seed if seed is None else seed
        self.threads = threads or settings.search_threads
        self.early_exit = settings.early_exit if early_exit is None else early_exit
        self.force = force
        self.include_timing = settings.include_timing if include_timing is None else include_timing

    @property
    def search_options(self) -> dict:
        return {
            "mode": self.mode,
            "budget": self.budget,
            "seed": self.seed,
            "threads": self.threads,
            "early_exit": self.early_exit,
        }

    def analyze(self, S: SemifieldCoeffs, record_id: str, label: Optional[str] = None) -> InvariantRecord:
        """Full record for one algebra; raises on failure."""
        start_time = time.perf_counter()
        ctx = S.ctx
        semifield = is_semifield(S)
        if not semifield and not self.force:
            raise NotASemifieldError(f"{record_id} has zero divisors")

        triple = bel_triple(S, force=self.force, **self.search_options)
        report = nuclei(S) if semifield else None

        flags = []
        if triple.d_dt_mismatch:
            flags.append("brk_d_ne_brk_dt")
        if report is not None and triple.brk.value > min(report.m, report.r):
            logger.warning(f"{record_id}: brk {triple.brk.value} exceeds min(m, r) = {min(report.m, report.r)}")
            flags.append("exceeds_nuclei_bound")
        if triple.brk.value >= ctx.n:
            flags.append("brk_ge_n")
        if not all(r.certified for r in (triple.brk, triple.brk_d, triple.brk_dt)):
            flags.append("uncertified")

        millis = round((time.perf_counter() - start_time) * 1000.0, 3) if self.include_timing else None
        return InvariantRecord(
            id=record_id,
            p=ctx.p,
            e=ctx.e,
            n=ctx.n,
            mrk=mrk(S),
            brk=triple.brk.value,
            brk_d=triple.brk_d.value,
            brk_dt=triple.brk_dt.value,
            nuclei=report.sizes if report else None,
            certificate=triple.brk.certificate_text,
            witness=triple.brk.witness_text,
            candidates=triple.brk.candidates_examined,
            millis=millis,
            label=label,
            flags=flags,
        )

    def analyze_path(self, path: Path, label: Optional[str] = None) -> InvariantRecord:
        """Record for one file; failures become a record with status failed."""
        path = Path(path)
        try:
            S = read_algebra(path)
            return self.analyze(S, path.name, label)
        except (SemifieldError, OSError) as e:
            logger.warning(f"✗ Failed {path.name}: {e}")
            return InvariantRecord(id=path.name, label=label, status=RecordStatus.FAILED, error=str(e))

    def analyze_directory(self, directory: Path, labels: Optional[Dict[str, str]] = None,
                          progress_callback: Optional[ProgressCallback] = None) -> BatchReport:
        """One record per file, in filename order."""
        directory = Path(directory)
        labels = labels or {}
        files = sorted((p for p in directory.iterdir() if p.is_file()), key=lambda p: p.name)
        logger.info(f"=== Batch over {len(files)} file(s) in {directory} ===")

        records: List[InvariantRecord] = []
        iterator: Iterable[Path] = files
        if settings.show_progress:
            iterator = tqdm(files, desc="batch", unit="file")
        for idx, path in enumerate(iterator):
            if progress_callback:
                progress_callback(idx / max(len(files), 1), f"Analyzing {idx + 1}/{len(files)}: {path.name}")
            records.append(self.analyze_path(path, labels.get(path.name)))

        if progress_callback:
            progress_callback(1.0, "Complete!")

        report = BatchReport(
            source=str(directory),
            records=records,
            histogram=histogram(records),
            label_histograms=label_histograms(records),
            failed=sum(r.status == RecordStatus.FAILED for r in records),
        )
        logger.info(f"=== Batch complete: {len(records) - report.failed} ok, {report.failed} failed ===")
        return report

    def save_report(self, report: BatchReport) -> Path:
        """Save JSON report."""
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        settings.reports_dir.mkdir(parents=True, exist_ok=True)
        filepath = settings.reports_dir / f"invariants_{timestamp}.json"

        with open(filepath, 'w') as f:
            f.write(report.model_dump_json(indent=2))

        logger.info(f"Report saved: {filepath}")
        return filepath


def histogram(records: Iterable[InvariantRecord]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for record in records:
        if record.status == RecordStatus.OK:
            key = str(record.brk)
            counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items(), key=lambda kv: int(kv[0])))


def label_histograms(records: Iterable[InvariantRecord]) -> Dict[str, Dict[str, int]]:
    grouped: Dict[str, List[InvariantRecord]] = {}
    for record in records:
        if record.label is not None:
            grouped.setdefault(record.label, []).append(record)
    return {label: histogram(group) for label, group in sorted(grouped.items())}


def load_labels(path: Path) -> Dict[str, str]:
    """`file,label` rows; a header row starting with 'file' is skipped."""
    labels = {}
    with open(path, newline='', encoding='utf-8') as f:
        for row in csv.reader(f):
            if len(row) < 2 or (not labels and row[0].strip().lower() == "file"):
                continue
            labels[row[0].strip()] = row[1].strip()
    return labels


def csv_row(record: InvariantRecord) -> Dict[str, object]:
    row = record.model_dump(mode="json")
    row["nuclei"] = ";".join(str(v) for v in record.nuclei) if record.nuclei else ""
    row["flags"] = ";".join(record.flags)
    return {column: "" if row.get(column) is None else row[column] for column in CSV_COLUMNS}


def render_records(records: List[InvariantRecord], fmt: str) -> str:
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(csv_row(record))
        return buffer.getvalue()
    return "".join(record.model_dump_json() + "\n" for record in records)


def render_summary(report: BatchReport, fmt: str) -> str:
    if fmt == "csv":
        lines = ["# brk histogram: " + " ".join(f"{k}={v}" for k, v in report.histogram.items())]
        for label, counts in report.label_histograms.items():
            lines.append(f"# label {label}: " + " ".join(f"{k}={v}" for k, v in counts.items()))
        if report.failed:
            lines.append(f"# failed: {report.failed}")
        return "\n".join(lines) + "\n"
    summary = report.model_dump(mode="json", include={"histogram", "label_histograms", "failed"})
    return json.dumps({"summary": summary}, separators=(",", ":")) + "\n"
