from __future__ import absolute_import
from __future__ import unicode_literals

import sys

IS_WINDOWS_PLATFORM = (sys.platform == "win32")

DEFAULT_EXACT_LIMIT = 4096
DEFAULT_WALK_BUDGET = 50000000
PARALLEL_LIMIT = 8

ENV_EXACT_LIMIT = 'MARTIGHT_EXACT_LIMIT'
ENV_WALK_BUDGET = 'MARTIGHT_WALK_BUDGET'
ENV_PARALLEL_LIMIT = 'MARTIGHT_PARALLEL_LIMIT'
ENV_CHECK_SERIES_TAIL = 'MARTIGHT_CHECK_SERIES_TAIL'

MODE_AUTO = 'auto'
MODE_EXACT = 'exact'
MODE_FLOAT = 'float'
MODES = (MODE_AUTO, MODE_EXACT, MODE_FLOAT)

FLOAT_TOLERANCE = 1e-12
SERIES_TOLERANCE = 1e-12
MAX_SERIES_TERMS = 256

SIM_CHUNK_SIZE = 1 << 16
MAX_SEED = (1 << 64) - 1

CSV_FLOAT_FORMAT = '{:.9g}'

EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_IO = 4
