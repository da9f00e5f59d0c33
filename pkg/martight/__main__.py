from __future__ import absolute_import
from __future__ import unicode_literals

from martight.cli.main import main

main()
