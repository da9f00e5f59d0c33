# flake8: noqa
from __future__ import absolute_import
from __future__ import unicode_literals

from .environment import Environment
from .environment import exact_limit_setting
from .environment import parallel_limit_setting
from .environment import resolve_exact_limit
from .environment import series_tail_check_setting
from .environment import Settings
from .environment import walk_budget_setting
from .errors import ConfigurationError
