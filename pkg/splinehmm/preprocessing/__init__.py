from .resample import (block_average, resample_series, expand_path,
                       period_factor)
