# stdlib
import math
import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

# 3rd-party
import pandas as pd

# Local
from summstat.utils import format_number
from summstat.core.errors import (
    BatchFileError,
    SummStatError,
    UnsupportedPatternError,
    ValidationError,
)
from summstat.core.model import (
    BatchSummary,
    C1Input,
    C2Input,
    C3Input,
    EnrichedRecord,
    MethodId,
    Scenario,
    ScenarioInput,
    StudyRecord,
)
from summstat.core.estimators import estimate

LOG = logging.getLogger(__name__)

REQUIRED_COLUMNS = ['study_id', 'n', 'min', 'q1', 'median', 'q3', 'max']
METHOD_COLUMNS = ['mean_method', 'sd_method']
OUTPUT_COLUMNS = ['scenario', 'est_mean', 'est_sd', 'mean_method_used', 'sd_method_used', 'flags']
REJECT_COLUMNS = ['line_no', 'reason']
SUMMARY_FIELDS = ('min', 'q1', 'median', 'q3', 'max')

# Header is line 1
FIRST_DATA_LINE = 2

SCENARIO_PATTERNS: Dict[Scenario, frozenset] = {
    Scenario.C1: frozenset({'min', 'median', 'max'}),
    Scenario.C2: frozenset({'min', 'q1', 'median', 'q3', 'max'}),
    Scenario.C3: frozenset({'q1', 'median', 'q3'}),
}


def rejects_path(output_path: str) -> str:
    return f"{output_path}.rejects.csv"


def _parse_number(name: str, raw: str) -> Optional[float]:
    text = raw.strip()
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise ValidationError(f"{name}={raw!r} is not a number")
    if not math.isfinite(value):
        raise ValidationError(f"{name}={raw!r} is not finite")
    return value


def _parse_sample_size(raw: str) -> int:
    text = raw.strip()
    if text == "":
        raise ValidationError("n is missing")
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"n={raw!r} is not an integer")


def _parse_method(name: str, raw: str) -> Optional[MethodId]:
    text = raw.strip()
    if text == "":
        return None
    try:
        return MethodId.to_enum(text)
    except ValueError:
        allowed = ', '.join(m.token for m in MethodId)
        raise ValidationError(f"{name}={raw!r} is not a known method ({allowed})")


def parse_record(line_no: int, row: Dict[str, str]) -> StudyRecord:
    """Builds a StudyRecord from one CSV row of strings; empty cells are absent fields."""
    record = StudyRecord(
        line_no=line_no,
        study_id=row.get('study_id', ''),
        n=_parse_sample_size(row.get('n', '')),
        raw=dict(row),
    )
    for name in SUMMARY_FIELDS:
        setattr(record, name, _parse_number(name, row.get(name, '')))
    for name in METHOD_COLUMNS:
        setattr(record, name, _parse_method(name, row.get(name, '')))
    return record


def detect_scenario(record: StudyRecord) -> Scenario:
    present = record.present_fields()
    for scenario, pattern in SCENARIO_PATTERNS.items():
        if present == pattern:
            return scenario

    # Closest pattern that contains everything reported
    candidates = [
        (len(pattern - present), pattern)
        for pattern in SCENARIO_PATTERNS.values()
        if present <= pattern
    ]
    _, closest = min(candidates, key=lambda c: c[0])
    missing = sorted(closest - present, key=SUMMARY_FIELDS.index)
    reported = ', '.join(f for f in SUMMARY_FIELDS if f in present) or 'nothing'
    raise UnsupportedPatternError(
        f"Unsupported field pattern ({reported}); missing {', '.join(missing)}",
        missing=missing,
    )


def record_to_input(record: StudyRecord, scenario: Scenario) -> ScenarioInput:
    if scenario == Scenario.C1:
        return C1Input(record.min, record.median, record.max, record.n)
    if scenario == Scenario.C2:
        return C2Input(record.min, record.q1, record.median, record.q3, record.max, record.n)
    return C3Input(record.q1, record.median, record.q3, record.n)


def enrich_record(
    record: StudyRecord,
    mean_method: Optional[MethodId] = None,
    sd_method: Optional[MethodId] = None,
) -> EnrichedRecord:
    """Row-level method columns win over the file-level defaults."""
    scenario = detect_scenario(record)
    input = record_to_input(record, scenario)
    est = estimate(
        input,
        record.mean_method or mean_method,
        record.sd_method or sd_method,
    )
    return EnrichedRecord(record, est)


def _read_frame(input_path: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(input_path, dtype=str, keep_default_na=False, skipinitialspace=False)
    except FileNotFoundError:
        raise BatchFileError(f"Input file not found: {input_path}")
    except pd.errors.EmptyDataError:
        raise BatchFileError(f"Input file has no header: {input_path}")
    except (pd.errors.ParserError, UnicodeDecodeError, OSError) as e:
        raise BatchFileError(f"Could not read {input_path}: {e}")

    columns = list(frame.columns)
    missing = [c for c in REQUIRED_COLUMNS if c not in columns]
    if missing:
        raise BatchFileError(f"Header of {input_path} lacks required columns: {', '.join(missing)}")
    clashing = [c for c in OUTPUT_COLUMNS if c in columns]
    if clashing:
        raise BatchFileError(f"Header of {input_path} already has output columns: {', '.join(clashing)}")
    # Short rows come back as NaN even with keep_default_na off
    return frame.fillna('')


def _enriched_row(columns: List[str], enriched: EnrichedRecord) -> List[str]:
    return [enriched.record.raw[c] for c in columns] + [
        enriched.scenario.value,
        format_number(enriched.est_mean) if enriched.est_mean is not None else '',
        format_number(enriched.est_sd) if enriched.est_sd is not None else '',
        enriched.mean_method_used,
        enriched.sd_method_used,
        ';'.join(enriched.flags),
    ]


def process_file(
    input_path: str,
    output_path: str,
    mean_method: Optional[MethodId] = None,
    sd_method: Optional[MethodId] = None,
) -> BatchSummary:
    """
    Enrich every row of a study CSV with mean/SD estimates.

    Rows that fail parsing, scenario detection, validation or dispatch go to
    `<output>.rejects.csv` with their line number and reason; they never abort the
    file. The rejects file is written even when it is empty.
    """
    frame = _read_frame(input_path)
    columns = list(frame.columns)

    enriched_rows = []
    rejects: List[Tuple[int, str]] = []
    flag_counts = Counter()
    for offset, row in enumerate(frame.to_dict(orient='records')):
        line_no = FIRST_DATA_LINE + offset
        try:
            enriched = enrich_record(parse_record(line_no, row), mean_method, sd_method)
        except SummStatError as e:
            LOG.info(f"Rejected line {line_no}: {e}")
            rejects.append((line_no, str(e)))
            continue
        flag_counts.update(enriched.flags)
        enriched_rows.append(_enriched_row(columns, enriched))

    try:
        pd.DataFrame(enriched_rows, columns=columns + OUTPUT_COLUMNS, dtype=str) \
            .to_csv(output_path, index=False, lineterminator='\n')
        pd.DataFrame(rejects, columns=REJECT_COLUMNS) \
            .to_csv(rejects_path(output_path), index=False, lineterminator='\n')
    except OSError as e:
        raise BatchFileError(f"Could not write {output_path}: {e}")

    for flag, count in sorted(flag_counts.items()):
        LOG.info(f"{flag}: {count} row(s)")
    LOG.info(f"Wrote {output_path} and {rejects_path(output_path)}")

    return BatchSummary(
        processed=len(frame),
        enriched=len(enriched_rows),
        rejected=len(rejects),
    )
