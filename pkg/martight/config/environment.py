from __future__ import absolute_import
from __future__ import unicode_literals

import logging
import os
from collections import namedtuple

from ..const import DEFAULT_EXACT_LIMIT
from ..const import DEFAULT_WALK_BUDGET
from ..const import ENV_CHECK_SERIES_TAIL
from ..const import ENV_EXACT_LIMIT
from ..const import ENV_PARALLEL_LIMIT
from ..const import ENV_WALK_BUDGET
from ..const import IS_WINDOWS_PLATFORM
from ..const import PARALLEL_LIMIT
from .errors import InvalidSetting

log = logging.getLogger(__name__)


class Environment(dict):
    def __init__(self, *args, **kwargs):
        super(Environment, self).__init__(*args, **kwargs)

    @classmethod
    def from_os_environ(cls):
        return cls(os.environ)

    def get(self, key, *args, **kwargs):
        if IS_WINDOWS_PLATFORM:
            return super(Environment, self).get(
                key,
                super(Environment, self).get(key.upper(), *args, **kwargs)
            )
        return super(Environment, self).get(key, *args, **kwargs)

    def get_boolean(self, key):
        # Convert a value to a boolean using "common sense" rules.
        # Unset, empty, "0" and "false" (i-case) yield False.
        # All other values yield True.
        value = self.get(key)
        if not value:
            return False
        if value.lower() in ['0', 'false']:
            return False
        return True

    def get_int(self, key, default, minimum=0):
        value = self.get(key)
        if value is None or value.strip() == '':
            return default
        try:
            number = int(value.strip())
        except ValueError:
            raise InvalidSetting(key, value, 'an integer')
        if number < minimum:
            raise InvalidSetting(key, value, 'an integer >= {}'.format(minimum))
        return number


def _environment(environment):
    if environment is None:
        return Environment.from_os_environ()
    return environment


def exact_limit_setting(environment=None):
    return _environment(environment).get_int(ENV_EXACT_LIMIT, DEFAULT_EXACT_LIMIT)


def walk_budget_setting(environment=None):
    return _environment(environment).get_int(ENV_WALK_BUDGET, DEFAULT_WALK_BUDGET, minimum=1)


def parallel_limit_setting(environment=None):
    return _environment(environment).get_int(ENV_PARALLEL_LIMIT, PARALLEL_LIMIT, minimum=1)


def series_tail_check_setting(environment=None):
    return _environment(environment).get_boolean(ENV_CHECK_SERIES_TAIL)


class Settings(namedtuple('_Settings', 'exact_limit walk_budget parallel_limit check_series_tail')):
    """All MARTIGHT_* settings at once. Library code reads single keys through
    the *_setting helpers."""

    @classmethod
    def from_environment(cls, environment=None):
        environment = _environment(environment)
        settings = cls(
            exact_limit=exact_limit_setting(environment),
            walk_budget=walk_budget_setting(environment),
            parallel_limit=parallel_limit_setting(environment),
            check_series_tail=series_tail_check_setting(environment),
        )
        if settings.exact_limit != DEFAULT_EXACT_LIMIT:
            log.debug('Exact path limit overridden: m <= {}'.format(settings.exact_limit))
        return settings


def resolve_exact_limit(limit=None):
    if limit is not None:
        return limit
    return exact_limit_setting()
