"""Text formats: edge lists, label CSVs, feature CSVs, matrix CSVs,
line-delimited benchmark reports.

All writers emit LF line endings, `.` decimal separators, and
shortest-round-trip floats. Readers reject malformed input with a
positioned error instead of truncating.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .affinity import RAW, STATES, AffinityMatrix
from .generators import Partition
from .graph import Graph, from_edge_list


class ParseError(ValueError):
    """Malformed input file; message carries the file position."""


@dataclass(frozen=True)
class LabeledDataset:
    graph: Graph
    labels: Partition | None = None
    node_names: list | None = None

    def __post_init__(self):
        n = self.graph.n
        if self.labels is not None and len(self.labels.labels) != n:
            raise ValueError(f"labels have length {len(self.labels.labels)}, graph has {n} nodes")
        if self.node_names is not None and len(self.node_names) != n:
            raise ValueError(f"node names have length {len(self.node_names)}, graph has {n} nodes")


def read_edge_list(path) -> tuple[Graph, list[str]]:
    """Whitespace-separated node pairs, one per line.

    `#` lines are comments and blank lines are skipped; any other line
    must hold exactly two tokens. Node names map to dense ids in
    first-appearance order.
    """
    names: list[str] = []
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected 2 tokens, found {len(tokens)}"
                )
            pair = []
            for tok in tokens:
                if tok not in ids:
                    ids[tok] = len(names)
                    names.append(tok)
                pair.append(ids[tok])
            edges.append((pair[0], pair[1]))
    return from_edge_list(edges, len(names)), names


def read_labels(path, names: list[str]) -> Partition:
    """CSV `node,label`; every named node exactly once.

    A first row whose node column matches no known name is treated as a
    header. Label strings map to dense ids in first-appearance order.
    """
    known = {name: i for i, name in enumerate(names)}
    raw: dict[int, str] = {}
    order: list[str] = []
    first_data_row = True
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            cells = [c.strip() for c in stripped.split(",")]
            if len(cells) != 2:
                raise ParseError(f"{path}:{lineno}: expected 2 columns, found {len(cells)}")
            node, label = cells
            if node not in known:
                if first_data_row:
                    first_data_row = False
                    continue
                raise ParseError(f"{path}:{lineno}: unknown node {node!r}")
            first_data_row = False
            idx = known[node]
            if idx in raw:
                raise ParseError(f"{path}:{lineno}: duplicate label for {node!r}")
            raw[idx] = label
            if label not in order:
                order.append(label)
    missing = [name for name, i in known.items() if i not in raw]
    if missing:
        raise ParseError(f"{path}: missing label for {missing[0]!r}")
    codes = {label: c for c, label in enumerate(order)}
    return Partition(labels=np.array([codes[raw[i]] for i in range(len(names))]))


def read_features(path) -> tuple[np.ndarray, list[str]]:
    """CSV with sample id in the first column and numeric features after.

    A first row whose feature cells do not all parse as numbers is
    treated as a header.
    """
    names: list[str] = []
    rows: list[list[float]] = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            cells = [c.strip() for c in stripped.split(",")]
            if len(cells) < 2:
                raise ParseError(f"{path}:{lineno}: expected an id and at least one feature")
            values = []
            bad_col = None
            for col, cell in enumerate(cells[1:], start=2):
                try:
                    values.append(float(cell))
                except ValueError:
                    bad_col = col
                    break
            if bad_col is not None:
                if not rows and not names:
                    continue
                raise ParseError(
                    f"{path}:{lineno}: column {bad_col}: non-numeric value {cells[bad_col - 1]!r}"
                )
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise ParseError(
                    f"{path}:{lineno}: expected {width} features, found {len(values)}"
                )
            names.append(cells[0])
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return np.array(rows), names


def write_matrix(a: AffinityMatrix, path, names: list[str] | None = None) -> None:
    """CSV: a `# state:` line, a header row of node names, then value rows."""
    n = a.n
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise ValueError("names must match the matrix size")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# state: {a.state}\n")
        fh.write(",".join(names) + "\n")
        for row in a.values:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_matrix(path) -> tuple[AffinityMatrix, list[str]]:
    """Inverse of write_matrix; files without a state line load as raw."""
    state = RAW
    names: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                tag = stripped[1:].strip()
                if tag.startswith("state:"):
                    state = tag[len("state:"):].strip()
                    if state not in STATES:
                        raise ParseError(f"{path}:{lineno}: unknown state {state!r}")
                continue
            cells = [c.strip() for c in stripped.split(",")]
            if names is None:
                names = cells
                continue
            if len(cells) != len(names):
                raise ParseError(
                    f"{path}:{lineno}: expected {len(names)} columns, found {len(cells)}"
                )
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-numeric matrix entry") from None
    if names is None or len(rows) != len(names):
        raise ParseError(f"{path}: expected a square matrix with a header row")
    values = np.array(rows)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=state), names


def write_labels(labels: Partition, path, names: list[str] | None = None) -> None:
    arr = labels.labels
    if names is None:
        names = [str(i) for i in range(len(arr))]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("node,label\n")
        for name, lab in zip(names, arr):
            fh.write(f"{name},{lab}\n")


def write_edge_list(g: Graph, path, names: list[str] | None = None) -> None:
    if names is None:
        names = [str(i) for i in range(g.n)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in g.to_edge_list():
            fh.write(f"{names[u]} {names[v]}\n")


_RUN_KEYS = {"record", "method", "setting", "seed", "rep", "walk_params", "runtime_seconds"}


def write_report(records: list[dict], path) -> None:
    """Line-delimited JSON with sorted keys.

    Records are written in the given order; run records must carry the
    schema keys (method, setting, seed, walk params, metrics, runtime).
    """
    for rec in records:
        if rec.get("record") == "run":
            missing = _RUN_KEYS - set(rec)
            if missing:
                raise ValueError(f"run record missing keys: {sorted(missing)}")
            if "ari" not in rec and "balanced_accuracy" not in rec:
                raise ValueError("run record carries no metric fields")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_report(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
