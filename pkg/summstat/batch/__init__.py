from .batch_io import (
    detect_scenario,
    parse_record,
    enrich_record,
    process_file,
    rejects_path,
)
