from __future__ import absolute_import
from __future__ import unicode_literals

import platform

import numpy

import martight


def get_version_info(scope):
    versioninfo = 'martight version {}'.format(martight.__version__)

    if scope == 'martight':
        return versioninfo
    if scope == 'full':
        return (
            "{}\n"
            "numpy version: {}\n"
            "{} version: {}"
        ).format(
            versioninfo,
            numpy.__version__,
            platform.python_implementation(),
            platform.python_version())

    raise ValueError("{} is not a valid version scope".format(scope))
