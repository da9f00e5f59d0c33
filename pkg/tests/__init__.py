from __future__ import absolute_import
from __future__ import unicode_literals

import unittest  # NOQA

try:
    from unittest import mock
except ImportError:
    import mock  # NOQA
