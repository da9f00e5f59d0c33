from __future__ import absolute_import
from __future__ import unicode_literals


class MartightError(Exception):
    def __init__(self, reason):
        super(MartightError, self).__init__(reason)
        self.msg = reason

    def __str__(self):
        return self.msg


class InvalidArgument(MartightError, ValueError):
    pass


class ResourceLimitExceeded(MartightError):
    def __init__(self, what, size, limit):
        super(ResourceLimitExceeded, self).__init__(
            '{} of size {} exceeds the configured limit of {}.'.format(what, size, limit)
        )
        self.size = size
        self.limit = limit


class OracleDisagreement(MartightError):
    def __init__(self, values):
        super(OracleDisagreement, self).__init__(
            'Oracles disagree: {}'.format(
                ', '.join('{}={}'.format(name, value) for name, value in sorted(values.items()))
            )
        )
        self.values = values


class OutputError(MartightError):
    pass
