import csv

from ._colearn import NOT_FOUND, RESULT_COLUMNS

_INTEGER = {"seed_base"}
_TEXT = {"instance", "algorithm"}


def _cell(column, value):
    if column in _TEXT:
        return value
    if column in _INTEGER:
        return int(value)
    if value in ("NA", NOT_FOUND):
        return None
    return float(value)


def read_result_table(path):
    """Rows of a results CSV as dicts; missing values become None."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != list(RESULT_COLUMNS):
            raise ValueError(f"{path}: header {header} does not match {list(RESULT_COLUMNS)}")
        rows = []
        for line, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise ValueError(f"{path}:{line}: expected {len(header)} cells, got {len(record)}")
            rows.append({c: _cell(c, v) for c, v in zip(header, record)})
        return rows
