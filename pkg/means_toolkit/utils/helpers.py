import csv
import json
import math
import os
from dataclasses import asdict, is_dataclass
from enum import Enum

import numpy as np

from means_toolkit.errors import InvalidInput

CSV_INPUT_COLUMNS = ('a', 'b', 'c', 'd', 'p', 'q', 'x', 'y', 'n')


def parse_float_list(text):
    """Parse '0.1,0.2' or a JSON array into a list of floats"""
    text = (text or '').strip()
    if not text:
        raise InvalidInput('empty value list')
    if text.startswith('['):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInput(f'bad JSON array: {e}') from e
    else:
        items = [part for part in text.split(',') if part.strip()]
    try:
        return [float(item) for item in items]
    except (TypeError, ValueError):
        raise InvalidInput(f'not a list of numbers: {text!r}') from None


def parse_int_range(text):
    """Parse '3..10', '3-10', '3,10' or a single '5' into an inclusive (lo, hi)"""
    text = str(text).strip()
    for sep in ('..', ',', '-', ':'):
        if sep in text:
            lo, _, hi = text.partition(sep)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise InvalidInput(f'not an integer range: {text!r}') from None
    if lo > hi:
        raise InvalidInput(f'empty range {text!r}')
    return lo, hi


def parse_float_range(text):
    parts = [part for part in str(text).replace('..', ',').split(',') if part.strip()]
    if len(parts) != 2:
        raise InvalidInput(f'expected lo,hi got {text!r}')
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise InvalidInput(f'not a numeric range: {text!r}') from None
    return lo, hi


def to_jsonable(obj):
    """Plain JSON types; non-finite floats become strings"""
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(value) for value in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else str(value)
    return obj


def dumps(obj):
    # json writes floats with repr, the shortest string that round-trips
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False, allow_nan=False)


def write_json(path, obj):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(obj))
        f.write('\n')
    return path


def _csv_cell(value):
    if value is None:
        return ''
    if isinstance(value, (list, tuple)):
        return ';'.join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_sample_csv(path, rows):
    """One line per sample: id, sample_index, inputs..., margin, verdict"""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(['id', 'sample_index', *CSV_INPUT_COLUMNS, 'margin', 'verdict'])
        for ineq_id, index, inputs, margin, verdict in rows:
            writer.writerow([
                ineq_id,
                index,
                *(_csv_cell(inputs.get(key)) for key in CSV_INPUT_COLUMNS),
                _csv_cell(float(margin)),
                verdict,
            ])
    return path
