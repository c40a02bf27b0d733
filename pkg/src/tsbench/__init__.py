"""tsbench: benchmark analytical time-series workloads over embedded engines.

The package is organized as a numpy library:

- :mod:`tsbench.data` -- dataset model, CSV interchange, synthetic profiles
- :mod:`tsbench.operators` -- pure implementations of the operator catalog
- :mod:`tsbench.catalog` -- operator schemas and the UDF execution glue
- :mod:`tsbench.engines` -- embedded row/column stores with time chunking
- :mod:`tsbench.runner` -- timed benchmark execution and recommendations
- :mod:`tsbench.service` -- HTTP facade (also reachable via ``bench serve``)
"""

from .data import (
    BUILTIN_PROFILES,
    Dataset,
    DatasetProfile,
    TimeSeries,
    generate_synthetic,
    parse_dataset_csv,
    serialize_dataset_csv,
    slice_dataset,
)
from .engines import (
    ColumnStore,
    InsertStats,
    OperatorRequest,
    OperatorResult,
    RowStore,
    create_engine,
    engine_ids,
    list_capabilities,
    register_engine,
)
from .runner import (
    BenchmarkResult,
    BenchmarkSpec,
    DatasetStore,
    Recommendation,
    parse_results_csv,
    recommend,
    results_to_csv,
    run_benchmark,
)
from .service import BenchService

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_PROFILES", "Dataset", "DatasetProfile", "TimeSeries",
    "generate_synthetic", "parse_dataset_csv", "serialize_dataset_csv",
    "slice_dataset",
    "ColumnStore", "InsertStats", "OperatorRequest", "OperatorResult",
    "RowStore", "create_engine", "engine_ids", "list_capabilities",
    "register_engine",
    "BenchmarkResult", "BenchmarkSpec", "DatasetStore", "Recommendation",
    "parse_results_csv", "recommend", "results_to_csv", "run_benchmark",
    "BenchService",
    "__version__",
]
