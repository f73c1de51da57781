from .datastore import (write_yaml_to_file, read_yaml_file, write_json,
                        read_json, write_trace_jsonl, read_trace_jsonl)
from .csvdatastore import (CSVDataStore, read_dataset_csv, write_dataset_csv,
                           read_activity_csv, write_trace_csv, read_trace_csv,
                           write_frame_csv, FLOAT_FORMAT)
