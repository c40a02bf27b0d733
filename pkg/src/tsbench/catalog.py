"""The operator catalog: names, parameter schemas, and pure execution.

Fourteen operators are exposed to engines, the runner, the HTTP service
and the CLI.  ``execute`` applies an operator to a dataset using the pure
implementations in :mod:`tsbench.operators`; engines use it for UDF mode
and implement their layout-aware native paths separately.

Missing-value policy: series-valued operators work on the unmasked
entries of their series (``distance`` keeps only rows observed in both
series); matrix-valued operators keep complete rows only; ``recover``
consumes the mask itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operators as ops
from .data import Dataset
from .errors import InvalidParameter, LabelMismatch, OutOfRange, UnknownOperator

# Operators each engine implements natively (inside its own scan code);
# everything else runs as a UDF over fetched data.
NATIVE_OPS: dict[str, frozenset[str]] = {
    "row_store": frozenset({"sum", "select"}),
    "column_store": frozenset({"sum", "select", "moving_average", "znormalize"}),
}

UDF = "udf"
NATIVE = "native"
MODES = (UDF, NATIVE)


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # int | float | str
    default: object | None = None  # None = derived from the dataset at run time
    minimum: float | None = None
    maximum: float | None = None
    doc: str = ""

    def parse(self, raw) -> object:
        if isinstance(raw, str):
            try:
                if self.kind == "int":
                    value = int(raw)
                elif self.kind == "float":
                    value = float(raw)
                else:
                    value = raw
            except ValueError as e:
                raise InvalidParameter(f"{self.name}={raw!r} is not a {self.kind}") from e
        else:
            value = raw
        if self.kind == "float" and isinstance(value, (int, float)) and math.isnan(float(value)):
            raise InvalidParameter(f"{self.name} must not be NaN")
        if self.minimum is not None and value < self.minimum:
            raise OutOfRange(f"{self.name}={value} below minimum {self.minimum}")
        if self.maximum is not None and value > self.maximum:
            raise OutOfRange(f"{self.name}={value} above maximum {self.maximum}")
        return value


@dataclass(frozen=True)
class OperatorSpec:
    name: str
    params: tuple[ParamSpec, ...]
    doc: str
    base: str | None = None  # alias resolution (znormalize_native -> znormalize)
    forced_mode: str | None = None


_SERIES = ParamSpec("series", "str", doc="series name; defaults to the first series")

OPERATOR_SPECS: dict[str, OperatorSpec] = {
    spec.name: spec
    for spec in (
        OperatorSpec("znormalize", (_SERIES,),
                     "rescale one series to zero mean and unit deviation"),
        OperatorSpec("znormalize_native", (_SERIES,),
                     "z-normalization pinned to the engine's built-in path",
                     base="znormalize", forced_mode=NATIVE),
        OperatorSpec("sax", (
            _SERIES,
            ParamSpec("w", "int", 8, 1, None, "number of word segments"),
            ParamSpec("a", "int", 4, 2, 20, "alphabet size"),
        ), "symbolic word of one series"),
        OperatorSpec("centroid_decomposition", (
            ParamSpec("k", "int", None, 1, None,
                      "decomposition order; defaults to the column count"),
        ), "factor the dataset matrix into loading and relation parts"),
        OperatorSpec("kmeans", (
            ParamSpec("k", "int", 3, 1, None, "cluster count"),
            ParamSpec("seed", "int", 0, None, None, "PRNG seed"),
            ParamSpec("max_iter", "int", 100, 1, None, "iteration cap"),
        ), "cluster the rows into k groups"),
        OperatorSpec("knn", (
            ParamSpec("k", "int", 3, 1, None, "neighbour count"),
        ), "leave-one-out nearest-neighbour classification of every row"),
        OperatorSpec("screen", (
            _SERIES,
            ParamSpec("smin", "float", -0.008, None, None, "minimum speed per ms"),
            ParamSpec("smax", "float", 0.008, None, None, "maximum speed per ms"),
            ParamSpec("window", "int", 5000, 1, None, "constraint window in ms"),
        ), "repair values violating speed constraints"),
        OperatorSpec("recover", (
            ParamSpec("k_trunc", "int", None, 1, None,
                      "truncation order; defaults to min(3, columns-1)"),
            ParamSpec("tol", "float", 1e-6, None, None, "convergence threshold"),
            ParamSpec("max_iter", "int", 100, 1, None, "iteration cap"),
        ), "impute the dataset's masked cells"),
        OperatorSpec("hotsax", (
            _SERIES,
            ParamSpec("win", "int", 10, 2, None, "discord window length"),
            ParamSpec("count", "int", 1, 1, None, "number of discords"),
            ParamSpec("t0", "int", None, None, None,
                      "search interval start; defaults to the first timestamp"),
            ParamSpec("t1", "int", None, None, None,
                      "search interval end; defaults to the last timestamp"),
        ), "find the subsequences farthest from their nearest match"),
        OperatorSpec("select", (
            _SERIES,
            ParamSpec("t0", "int", None, None, None, "window start; defaults to first timestamp"),
            ParamSpec("t1", "int", None, None, None, "window end; defaults to last timestamp"),
        ), "observations whose timestamps lie in a window"),
        OperatorSpec("sum", (_SERIES,), "sum of one series"),
        OperatorSpec("moving_average", (
            _SERIES,
            ParamSpec("w", "int", 10, 1, None, "window length"),
        ), "window means of one series"),
        OperatorSpec("distance", (
            ParamSpec("s1", "str", None, doc="first series; defaults to series one"),
            ParamSpec("s2", "str", None, doc="second series; defaults to series two"),
        ), "Euclidean distance between two series"),
        OperatorSpec("dstree", (
            ParamSpec("leaf_capacity", "int", 4, 1, None, "index leaf size"),
        ), "index half the series, search the rest for nearest neighbours"),
    )
}

OPERATOR_NAMES: tuple[str, ...] = tuple(sorted(OPERATOR_SPECS))


def operator_spec(name: str) -> OperatorSpec:
    try:
        return OPERATOR_SPECS[name]
    except KeyError:
        raise UnknownOperator(name) from None


def supported_modes(op_name: str, engine_id: str) -> tuple[str, ...]:
    """Execution modes available for an operator on an engine."""
    spec = operator_spec(op_name)
    native_set = NATIVE_OPS.get(engine_id, frozenset())
    base = spec.base or spec.name
    if spec.forced_mode == NATIVE:
        return (NATIVE,) if base in native_set else ()
    modes = [UDF]
    if base in native_set:
        modes.append(NATIVE)
    return tuple(modes)


def validate_params(op_name: str, raw: dict) -> dict:
    """Check raw (possibly string-typed) parameters against the schema."""
    spec = operator_spec(op_name)
    known = {p.name: p for p in spec.params}
    out: dict[str, object] = {}
    for key, value in raw.items():
        if key not in known:
            raise InvalidParameter(f"operator {op_name!r} has no parameter {key!r}")
        out[key] = known[key].parse(value)
    return out


def schema() -> list[dict]:
    """JSON-ready catalog description, sorted by operator name."""
    out = []
    for name in OPERATOR_NAMES:
        spec = OPERATOR_SPECS[name]
        out.append({
            "name": name,
            "doc": spec.doc,
            "params": [
                {"name": p.name, "type": p.kind, "default": p.default,
                 "min": p.minimum, "max": p.maximum, "doc": p.doc}
                for p in spec.params
            ],
            "modes": {engine: list(supported_modes(name, engine))
                      for engine in sorted(NATIVE_OPS)},
        })
    return out


# ---------------------------------------------------------------------------
# Pure execution
# ---------------------------------------------------------------------------

def _series_name(dataset: Dataset, params: dict, key: str = "series",
                 position: int = 0) -> str:
    name = params.get(key)
    if name is not None:
        return str(name)
    if dataset.n_series <= position:
        raise OutOfRange(f"dataset has no series at position {position}")
    return dataset.series[position].name


def _unmasked(dataset: Dataset, name: str) -> tuple[np.ndarray, np.ndarray]:
    s = dataset.series_by_name(name)
    keep = ~s.missing
    return dataset.timestamps[keep], s.values[keep]


def _complete_rows(dataset: Dataset) -> np.ndarray:
    keep = ~dataset.mask_matrix().any(axis=1)
    return keep


def execute(op_name: str, params: dict, dataset: Dataset):
    """Apply one catalog operator to a dataset and return its payload."""
    spec = operator_spec(op_name)
    if spec.base:
        return execute(spec.base, params, dataset)

    if op_name == "znormalize":
        _, values = _unmasked(dataset, _series_name(dataset, params))
        return ops.znormalize(values)

    if op_name == "sax":
        _, values = _unmasked(dataset, _series_name(dataset, params))
        return ops.sax(values, params.get("w", 8), params.get("a", 4))

    if op_name == "centroid_decomposition":
        keep = _complete_rows(dataset)
        matrix = dataset.values_matrix()[keep]
        k = params.get("k")
        return ops.centroid_decomposition(matrix, dataset.n_series if k is None else k)

    if op_name == "kmeans":
        keep = _complete_rows(dataset)
        matrix = dataset.values_matrix()[keep]
        return ops.kmeans(matrix, params.get("k", 3), seed=params.get("seed", 0),
                          max_iter=params.get("max_iter", 100))

    if op_name == "knn":
        if dataset.labels is None:
            raise LabelMismatch(f"dataset {dataset.name!r} carries no labels")
        keep = _complete_rows(dataset)
        matrix = dataset.values_matrix()[keep]
        labels = [lab for lab, ok in zip(dataset.labels, keep) if ok]
        k = params.get("k", 3)
        if matrix.shape[0] < 2:
            raise OutOfRange("leave-one-out classification needs at least two rows")
        n = matrix.shape[0]
        predictions = []
        idx = np.arange(n)
        for i in range(n):
            rest = idx != i
            train_labels = [labels[j] for j in range(n) if j != i]
            # k is capped by the leave-one-out training size
            predictions.append(ops.knn_classify(matrix[rest], train_labels,
                                                matrix[i], min(k, n - 1)))
        return predictions

    if op_name == "screen":
        t, values = _unmasked(dataset, _series_name(dataset, params))
        return ops.screen_repair(values, t, params.get("smin", -0.008),
                                 params.get("smax", 0.008),
                                 params.get("window", 5000))

    if op_name == "recover":
        matrix = dataset.values_matrix()
        mask = dataset.mask_matrix()
        k_trunc = params.get("k_trunc")
        if k_trunc is None:
            k_trunc = min(3, dataset.n_series - 1)
        if not mask.any():
            return matrix.copy()
        return ops.recover_missing(matrix, mask, k_trunc,
                                   tol=params.get("tol", 1e-6),
                                   max_iter=params.get("max_iter", 100))

    if op_name == "hotsax":
        # an interval restricts the search via range selection first;
        # discord starts index into the selected value sequence
        name = _series_name(dataset, params)
        t0 = params.get("t0")
        t1 = params.get("t1")
        if t0 is None and t1 is None:
            _, values = _unmasked(dataset, name)
        else:
            if t0 is None:
                t0 = int(dataset.timestamps[0])
            if t1 is None:
                t1 = int(dataset.timestamps[-1])
            values = np.array([v for _, v in ops.select_range(dataset, name, t0, t1)])
        return ops.hotsax_discords(values, params.get("win", 10),
                                   params.get("count", 1), name=name)

    if op_name == "select":
        name = _series_name(dataset, params)
        t0 = params.get("t0")
        t1 = params.get("t1")
        if t0 is None:
            t0 = int(dataset.timestamps[0])
        if t1 is None:
            t1 = int(dataset.timestamps[-1])
        return ops.select_range(dataset, name, t0, t1)

    if op_name == "sum":
        return ops.sum_series(dataset, _series_name(dataset, params))

    if op_name == "moving_average":
        _, values = _unmasked(dataset, _series_name(dataset, params))
        return ops.moving_average(values, params.get("w", 10))

    if op_name == "distance":
        n1 = _series_name(dataset, params, "s1", 0)
        n2 = _series_name(dataset, params, "s2", 1)
        a = dataset.series_by_name(n1)
        b = dataset.series_by_name(n2)
        keep = ~(a.missing | b.missing)
        return ops.euclid_distance(a.values[keep], b.values[keep])

    if op_name == "dstree":
        if dataset.n_series < 2:
            raise OutOfRange("dstree needs at least two series (index half, query half)")
        keep = _complete_rows(dataset)
        matrix = dataset.values_matrix()[keep]
        split = (dataset.n_series + 1) // 2
        names = dataset.series_names
        index = ops.dstree_build([matrix[:, j] for j in range(split)],
                                 params.get("leaf_capacity", 4))
        results = []
        for j in range(split, dataset.n_series):
            sid, dist = ops.dstree_search(index, matrix[:, j])
            results.append((names[j], names[sid], dist))
        return results

    raise UnknownOperator(op_name)
