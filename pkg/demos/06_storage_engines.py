"""Embedded engines: layouts, execution modes, and cross-engine agreement."""

import numpy as np

from tsbench.data import BUILTIN_PROFILES, generate_synthetic, slice_dataset
from tsbench.engines import OperatorRequest, create_engine, list_capabilities

dataset = slice_dataset(generate_synthetic(BUILTIN_PROFILES["sports_mini"]), 200, 8)

row = create_engine("row_store", chunk_size=64)
col = create_engine("column_store", chunk_size=64)
print("insert row_store:   ", row.insert(dataset))
print("insert column_store:", col.insert(dataset))

# Each engine declares which operators its scan code implements natively;
# everything runs as a UDF over fetched data on both.
for engine_id in ("row_store", "column_store"):
    native = [op for op, modes in list_capabilities(engine_id).items()
              if "native" in modes]
    print(f"{engine_id:13s} native: {native}")

# Sums accumulate strictly left to right in every path, so the engines and
# modes agree bit for bit.
sums = {}
for name, engine in (("row", row), ("col", col)):
    for mode in ("udf", "native"):
        sums[f"{name}/{mode}"] = engine.run(
            dataset.name, OperatorRequest("sum", {"series": "s3"}, mode)).payload
print("\nsum via four paths:", sums)
print("bitwise identical:", len(set(sums.values())) == 1)

# Native z-normalization exists on the column store only.
udf = col.run(dataset.name, OperatorRequest("znormalize", {})).payload
nat = col.run(dataset.name, OperatorRequest("znormalize", {}, "native")).payload
print("\nznormalize native vs udf max diff:",
      float(np.abs(np.asarray(udf) - np.asarray(nat)).max()))
try:
    row.run(dataset.name, OperatorRequest("znormalize", {}, "native"))
except Exception as e:
    print("row_store native znormalize ->", type(e).__name__)

# Chunking is transparent: any chunk size yields the same payload.
payloads = []
for chunk_size in (1, 7, 10000):
    engine = create_engine("column_store", chunk_size=chunk_size)
    engine.insert(dataset)
    payloads.append(engine.run(dataset.name,
                               OperatorRequest("moving_average", {"w": 9})).payload)
print("\nchunk sizes 1/7/10000 agree:",
      all(np.array_equal(payloads[0], p) for p in payloads[1:]))
