"""A full benchmark: timed inserts and queries, ranking, result CSV."""

from tsbench.engines import OperatorRequest
from tsbench.runner import (
    BenchmarkSpec,
    DatasetStore,
    recommend,
    results_to_csv,
    run_benchmark,
)

store = DatasetStore()

# Compare both engines on a column-friendly aggregation.
spec = BenchmarkSpec(
    engines=("row_store", "column_store"),
    operator=OperatorRequest("sum", {}, mode="native"),
    dataset="alabama_mini",
    rows=2000,
    cols=10,
    reps=5,
    warmups=1,
)
results = run_benchmark(spec, store=store)
print(f"{len(results)} measured sections "
      f"({len(spec.engines)} engines x (1 insert + {spec.reps} query reps))")

rec = recommend(results)
for engine in rec.ranking:
    print(f"  {engine:13s} median query {rec.medians[engine]:8.3f} ms")
print("recommended engine:", rec.winner)

# The CSV is the wire format the HTTP service returns; the ranking rides
# along as comment lines.
print("\n" + results_to_csv(results, rec).decode())
