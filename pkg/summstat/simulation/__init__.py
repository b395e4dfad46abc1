from .sampling import sample, replication_rng, open_uniforms
from .harness import (
    summarize,
    relative_error,
    validate_config,
    run_grid,
    run_study,
    build_preset_configs,
    build_custom_config,
    build_distribution,
    cells_to_frame,
    write_cells_csv,
)
