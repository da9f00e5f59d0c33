from __future__ import absolute_import
from __future__ import unicode_literals

import signal

from ..const import IS_WINDOWS_PLATFORM


class ShutdownException(Exception):
    pass


def shutdown(signal, frame):
    raise ShutdownException()


def set_signal_handler_to_shutdown():
    signal.signal(signal.SIGTERM, shutdown)


def ignore_sigpipe():
    # Restore default behavior for SIGPIPE so that piping the CSV into `head`
    # ends quietly.
    if not IS_WINDOWS_PLATFORM:
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
