from __future__ import absolute_import
from __future__ import unicode_literals


class ConfigurationError(Exception):
    def __init__(self, msg):
        self.msg = msg

    def __str__(self):
        return self.msg


class InvalidSetting(ConfigurationError):
    def __init__(self, key, value, expected):
        super(InvalidSetting, self).__init__(
            "Invalid value {!r} for {}: expected {}.".format(value, key, expected)
        )
        self.key = key
