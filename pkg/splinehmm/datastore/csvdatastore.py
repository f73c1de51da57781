from __future__ import print_function, division
from os import makedirs
from os.path import join, exists, isfile

import numpy as np
import pandas as pd

from ..dataset import Dataset
from ..consts import BOUNDS_PAD
from ..sampler.trace import Trace
from ..exceptions import DataFormatError
from .datastore import write_yaml_to_file, read_yaml_file

# 17 significant digits reproduce every double exactly.
FLOAT_FORMAT = '%.17g'
MISSING_TOKENS = ('', 'NA', 'na', 'NaN', 'nan')
TRACE_COLUMNS = ['sweep', 'a', 'b', 'K', 'knots', 'coeffs', 'coeffs_uncon',
                 'delta', 'delta_uncon', 'gamma', 'gamma_uncon', 'zeta', 'w',
                 'loglik', 'logprior']
_VECTOR_COLUMNS = ('knots', 'coeffs', 'coeffs_uncon', 'delta', 'delta_uncon',
                   'gamma', 'gamma_uncon', 'w')


def _read_text_frame(filename, required):
    try:
        frame = pd.read_csv(filename, dtype=str, keep_default_na=False,
                            skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise DataFormatError("file is empty", filename, 1)
    except pd.errors.ParserError as error:
        raise DataFormatError(str(error), filename)
    frame.columns = [str(column).strip() for column in frame.columns]
    absent = [column for column in required if column not in frame.columns]
    if absent:
        raise DataFormatError("missing column(s) {}".format(absent),
                              filename, 1)
    return frame


def _first_bad_line(bad):
    """CSV line number of the first flagged row (the header is line 1)."""
    return int(np.flatnonzero(np.asarray(bad))[0]) + 2


def _parse_values(column, filename, name):
    text = column.str.strip()
    missing = text.isin(MISSING_TOKENS)
    values = pd.to_numeric(text.where(~missing), errors='coerce')
    bad = values.isnull() & ~missing
    if bad.any():
        line = _first_bad_line(bad)
        raise DataFormatError("cannot parse {} '{}'".format(
            name, text.iloc[line - 2]), filename, line)
    return values.values.astype(float), missing.values


def read_dataset_csv(filename, bounds=None, pad=BOUNDS_PAD):
    """Reads a 'value' column and an optional 0/1 'missing' column.

    Empty fields and NA mark missing values.

    Returns
    -------
    Dataset

    Raises
    ------
    DataFormatError naming the line of the first malformed row.
    """
    frame = _read_text_frame(filename, ['value'])
    values, missing = _parse_values(frame['value'], filename, 'value')
    if 'missing' in frame.columns:
        flags = frame['missing'].str.strip().str.lower()
        known = flags.isin(('0', '1', 'true', 'false', ''))
        if not known.all():
            raise DataFormatError("missing flag must be 0 or 1", filename,
                                  _first_bad_line(~known))
        missing = missing | flags.isin(('1', 'true')).values
    return Dataset(values, missing, bounds=bounds, pad=pad)


def write_dataset_csv(filename, data):
    frame = pd.DataFrame({'value': data.obs,
                          'missing': data.missing.astype(int)},
                         columns=['value', 'missing'])
    frame.to_csv(filename, index=False, float_format=FLOAT_FORMAT,
                 na_rep='')


def read_activity_csv(filename):
    """Reads 'timestamp' and 'count' columns.

    Returns
    -------
    pd.DataFrame sorted by timestamp; missing counts are NaN.
    """
    frame = _read_text_frame(filename, ['timestamp', 'count'])
    timestamps = pd.to_datetime(frame['timestamp'].str.strip(),
                                errors='coerce')
    if timestamps.isnull().any():
        line = _first_bad_line(timestamps.isnull())
        raise DataFormatError("cannot parse timestamp '{}'".format(
            frame['timestamp'].iloc[line - 2]), filename, line)
    counts, _ = _parse_values(frame['count'], filename, 'count')
    activity = pd.DataFrame({'timestamp': timestamps, 'count': counts},
                            columns=['timestamp', 'count'])
    return activity.sort_values('timestamp').reset_index(drop=True)


def write_frame_csv(filename, frame, index=False):
    frame.to_csv(filename, index=index, float_format=FLOAT_FORMAT)


def _encode_scalar(value):
    return FLOAT_FORMAT % value


def _encode_vector(values):
    """Length-prefixed, space-separated numbers; '' for None."""
    if values is None:
        return ''
    flat = np.asarray(values, dtype=float).ravel()
    return ' '.join([str(len(flat))] + [FLOAT_FORMAT % v for v in flat])


def _decode_vector(text):
    tokens = text.split()
    if not tokens:
        return None
    length = int(tokens[0])
    if length != len(tokens) - 1:
        raise ValueError("vector declares {} values but holds {}".format(
            length, len(tokens) - 1))
    return np.array([float(token) for token in tokens[1:]])


def write_trace_csv(filename, trace):
    """One row per draw.  Matrices are flattened row by row."""
    rows = []
    for record in trace.to_records():
        row = {}
        for column in TRACE_COLUMNS:
            value = record[column]
            if column in _VECTOR_COLUMNS:
                row[column] = _encode_vector(value)
            elif column in ('sweep', 'K'):
                row[column] = str(int(value))
            else:
                row[column] = _encode_scalar(value)
        rows.append(row)
    pd.DataFrame(rows, columns=TRACE_COLUMNS).to_csv(filename, index=False)


def read_trace_csv(filename):
    """Inverse of `write_trace_csv`; draws are reconstructed exactly.

    Raises
    ------
    DataFormatError naming the line of the first malformed row.
    EmptyTraceError if the file holds no draws.
    """
    frame = _read_text_frame(filename, TRACE_COLUMNS)
    records = []
    for i, row in enumerate(frame.itertuples(index=False)):
        row = row._asdict()
        try:
            record = {column: _decode_vector(row[column])
                      for column in _VECTOR_COLUMNS}
            N = len(record['delta_uncon'])
            for column in ('coeffs', 'coeffs_uncon'):
                record[column] = record[column].reshape(N, -1)
            for column in ('gamma', 'gamma_uncon'):
                record[column] = record[column].reshape(N, N)
            for column in ('a', 'b', 'zeta', 'loglik', 'logprior'):
                record[column] = float(row[column])
            record['sweep'] = int(row['sweep'])
            if record['knots'] is None:
                record['knots'] = np.zeros(0)
            if int(row['K']) != len(record['knots']):
                raise ValueError("K does not match the number of knots")
        except (ValueError, TypeError, AttributeError) as error:
            raise DataFormatError(str(error), filename, i + 2)
        records.append(record)
    return Trace.from_records(records)


class CSVDataStore(object):
    """Directory of CSV files plus a YAML metadata file.

    Keys like '/fit/trace' map to '<directory>/fit/trace.csv'.
    """

    def __init__(self, directory):
        self.directory = directory
        if not exists(directory):
            makedirs(directory)

    def __getitem__(self, key):
        file_path = self.path(key)
        if isfile(file_path):
            return pd.read_csv(file_path)
        raise KeyError('{} not found'.format(key))

    def __contains__(self, key):
        return isfile(self.path(key))

    def path(self, key, extension='.csv'):
        relative = key.strip('/')
        if not relative:
            raise KeyError("empty key")
        file_path = join(self.directory, relative)
        if extension and not file_path.endswith(extension):
            file_path += extension
        parent = join(self.directory, *relative.split('/')[:-1])
        if not exists(parent):
            makedirs(parent)
        return file_path

    def put(self, key, frame, index=False):
        write_frame_csv(self.path(key), frame, index=index)

    def _metadata_path(self):
        return join(self.directory, 'metadata.yaml')

    def save_metadata(self, metadata):
        write_yaml_to_file(self._metadata_path(), metadata)

    def load_metadata(self):
        if not isfile(self._metadata_path()):
            return {}
        return read_yaml_file(self._metadata_path())
