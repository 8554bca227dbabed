"""Readers for the ewadyn CSV formats.

Files carry `#`-prefixed header lines (`# ewadyn <command>`, `# key = value`
parameter echoes, `# columns: ...`) followed by comma-separated data rows.
Any deviation raises SchemaError carrying the 1-based line number.
"""

from __future__ import annotations

from dataclasses import dataclass


class SchemaError(Exception):
    """Input file does not match the expected ewadyn CSV schema."""

    def __init__(self, path, line_number: int, message: str):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


@dataclass
class Table:
    """Parsed CSV: producing command, echoed params, column names, rows."""

    command: str
    params: dict
    columns: list[str]
    rows: list[list]  # floats, except columns named 'label' stay strings


def read_table(path, expect_columns: list[str] | None = None) -> Table:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise SchemaError(path, 1, "empty file")
    if not lines[0].startswith("# ewadyn "):
        raise SchemaError(path, 1, "missing '# ewadyn <command>' header line")
    command = lines[0][len("# ewadyn "):].strip()
    params: dict = {}
    columns: list[str] | None = None
    rows: list[list] = []
    for idx, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            if rows:
                raise SchemaError(path, idx, "header line after data rows")
            body = line[1:].strip()
            if body.startswith("columns:"):
                columns = [c.strip() for c in body[len("columns:"):].split(",")]
            elif " = " in body:
                key, value = body.split(" = ", 1)
                params[key.strip()] = value.strip()
            continue
        if not line.strip():
            raise SchemaError(path, idx, "blank line inside data section")
        if columns is None:
            raise SchemaError(path, idx, "data row before '# columns:' header")
        fields = line.split(",")
        if len(fields) != len(columns):
            raise SchemaError(path, idx,
                              f"expected {len(columns)} fields ({','.join(columns)}), got {len(fields)}")
        row = []
        for name, field in zip(columns, fields):
            if name == "label":
                row.append(field)
                continue
            try:
                row.append(float(field))
            except ValueError:
                raise SchemaError(path, idx, f"field {name!r} is not a number: {field!r}") from None
        rows.append(row)
    if columns is None:
        raise SchemaError(path, len(lines), "missing '# columns:' header line")
    if expect_columns is not None and columns != expect_columns:
        raise SchemaError(path, 1,
                          f"expected columns {','.join(expect_columns)}, found {','.join(columns)}")
    if not rows:
        raise SchemaError(path, len(lines), "no data rows")
    return Table(command=command, params=params, columns=columns, rows=rows)


def as_grid(table: Table, x_col: int, y_col: int, v_col: int):
    """Reshape (x, y, value) rows into sorted-unique axes and a value matrix.

    Returns (x_values, y_values, matrix) with matrix[j][i] the value at
    (x_values[i], y_values[j]); every (x, y) pair must appear exactly once.
    """
    xs = sorted({row[x_col] for row in table.rows})
    ys = sorted({row[y_col] for row in table.rows})
    index_x = {v: i for i, v in enumerate(xs)}
    index_y = {v: j for j, v in enumerate(ys)}
    matrix = [[None] * len(xs) for _ in ys]
    for row in table.rows:
        matrix[index_y[row[y_col]]][index_x[row[x_col]]] = row[v_col]
    for j, line in enumerate(matrix):
        if any(v is None for v in line):
            raise SchemaError("<grid>", 0,
                              f"grid is not rectangular: missing cells in row y={ys[j]}")
    return xs, ys, matrix
