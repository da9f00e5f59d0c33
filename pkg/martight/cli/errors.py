from __future__ import absolute_import
from __future__ import unicode_literals

from textwrap import dedent


class UserError(Exception):

    def __init__(self, msg):
        self.msg = dedent(msg).strip()

    def __unicode__(self):
        return self.msg

    __str__ = __unicode__


def invalid_flag(flag, value, expected):
    return UserError(
        "Invalid value for {}: '{}'. Expected {}.".format(flag, value, expected))
