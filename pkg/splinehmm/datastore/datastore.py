from __future__ import print_function, division
import json

import numpy as np
import yaml

from ..sampler.trace import Trace
from ..exceptions import DataFormatError


def write_yaml_to_file(filename, metadata):
    with open(filename, 'w') as metadata_file:
        yaml.safe_dump(metadata, metadata_file, default_flow_style=False)


def read_yaml_file(filename):
    with open(filename) as metadata_file:
        return yaml.safe_load(metadata_file) or {}


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError("{!r} is not JSON serializable".format(value))


def write_json(filename, obj):
    """Floats are written with their shortest round-tripping repr."""
    with open(filename, 'w') as json_file:
        json.dump(obj, json_file, indent=2, default=_plain)
        json_file.write('\n')


def read_json(filename):
    with open(filename) as json_file:
        try:
            return json.load(json_file)
        except ValueError as error:
            raise DataFormatError(str(error), filename,
                                  getattr(error, 'lineno', None))


def write_trace_jsonl(filename, trace):
    """One JSON object per draw."""
    with open(filename, 'w') as jsonl_file:
        for record in trace.to_records():
            jsonl_file.write(json.dumps(record, default=_plain))
            jsonl_file.write('\n')


def read_trace_jsonl(filename):
    """Inverse of `write_trace_jsonl`.

    Raises
    ------
    DataFormatError with the line number of a malformed record.
    EmptyTraceError if the file holds no draws.
    """
    records = []
    with open(filename) as jsonl_file:
        for line_number, line in enumerate(jsonl_file, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except ValueError as error:
                raise DataFormatError(str(error), filename, line_number)
    return Trace.from_records(records)
