from __future__ import absolute_import
from __future__ import unicode_literals

import csv
import io
import json
import logging
import os
import shutil
from collections import namedtuple

import six
import texttable
from jsonschema import Draft4Validator

from ..const import CSV_FLOAT_FORMAT
from ..errors import OutputError
from ..exactnum import Dyadic

if hasattr(shutil, "get_terminal_size"):
    from shutil import get_terminal_size
else:
    get_terminal_size = None


SWEEP_COLUMNS = (
    'r', 'azuma_one', 'azuma_two', 'tight_one', 'tight_two', 'corollary_two', 'rw_one', 'rw_two',
)

ANSI_CODES = {
    'red': '31',
    'yellow': '33',
}


def ansi_color(name, s):
    return '\033[{0}m{1}\033[0m'.format(ANSI_CODES[name], s)


def get_tty_width():
    if get_terminal_size is None:
        return 0
    try:
        # piped output is consumed by another program, so keep rows on one line
        width, _ = get_terminal_size(fallback=(999, 0))
        return int(width)
    except OSError:
        return 0


class OutputEnvelope(namedtuple('_OutputEnvelope', 'query results meta')):
    """One command's result: the echoed query, its results and run metadata.

    Values may be Dyadic; they are rendered with both their fraction and
    decimal forms.
    """

    def as_dict(self):
        return {
            'query': _jsonable(self.query),
            'results': _jsonable(self.results),
            'meta': _jsonable(self.meta),
        }

    def flat_items(self):
        items = []
        for section in (self.query, self.results):
            for key in sorted(section):
                value = section[key]
                if isinstance(value, Dyadic):
                    items.append((key, value.to_text()))
                    items.append((key + '_decimal', value.to_decimal()))
                else:
                    items.append((key, format_scalar(value)))
        return items


def exact_value(value):
    return {'fraction': value.to_text(), 'decimal': value.to_decimal()}


def _jsonable(section):
    return {
        key: exact_value(value) if isinstance(value, Dyadic) else value
        for key, value in section.items()
    }


def format_scalar(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return CSV_FLOAT_FORMAT.format(value)
    return six.text_type(value)


def get_schema_path():
    return os.path.dirname(os.path.abspath(__file__))


def load_jsonschema():
    filename = os.path.join(get_schema_path(), 'output_schema.json')
    with open(filename, 'r') as fh:
        return json.load(fh)


def validate_output(envelope):
    validator = Draft4Validator(load_jsonschema())
    errors = sorted(validator.iter_errors(envelope.as_dict()), key=str)
    if errors:
        raise OutputError(
            "The output does not match its schema:\n{}".format(
                '\n'.join(error.message for error in errors)))


class Formatter(object):
    """Render an OutputEnvelope for printing."""

    @staticmethod
    def table(headers, rows):
        table = texttable.Texttable(max_width=get_tty_width())
        table.set_cols_dtype(['t' for h in headers])
        table.add_rows([headers] + rows)
        table.set_deco(table.HEADER)
        table.set_chars(['-', '|', '+', '-'])

        return table.draw()

    @staticmethod
    def json(envelope):
        validate_output(envelope)
        return json.dumps(
            envelope.as_dict(), sort_keys=True, indent=2, separators=(',', ': ')) + '\n'

    @staticmethod
    def csv(envelope):
        validate_output(envelope)
        items = envelope.flat_items()
        return write_csv([name for name, _ in items], [[value for _, value in items]])

    @classmethod
    def report(cls, envelope):
        validate_output(envelope)
        return cls.table(['field', 'value'], [list(item) for item in envelope.flat_items()]) + '\n'

    @classmethod
    def render(cls, envelope, fmt):
        if fmt == 'table':
            return cls.report(envelope)
        return getattr(cls, fmt)(envelope)


def write_csv(header, rows):
    buf = io.StringIO() if six.PY3 else io.BytesIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    value = buf.getvalue()
    return value.decode('utf-8') if isinstance(value, six.binary_type) else value


def clamp(value):
    return min(1.0, max(0.0, value))


def sweep_csv(samples, clamp_values=True):
    rows = []
    for sample in samples:
        values = [getattr(sample, name) for name in SWEEP_COLUMNS[1:]]
        if clamp_values:
            values = [clamp(value) for value in values]
        rows.append([CSV_FLOAT_FORMAT.format(sample.r)] + [CSV_FLOAT_FORMAT.format(v) for v in values])
    return write_csv(list(SWEEP_COLUMNS), rows)


def write_output(text, path=None, stream=None):
    if path is None:
        stream.write(text)
        stream.flush()
        return
    try:
        with io.open(path, 'w', encoding='utf-8', newline='\n') as fh:
            fh.write(six.text_type(text))
    except (IOError, OSError) as e:
        raise OutputError("Couldn't write output to {}: {}".format(path, e.strerror or e))


class ConsoleWarningFormatter(logging.Formatter):
    """A logging.Formatter which prints WARNING and ERROR messages with
    a prefix of the log level colored appropriate for the log level.
    """

    def get_level_message(self, record):
        separator = ': '
        if record.levelno == logging.WARNING:
            return ansi_color('yellow', record.levelname) + separator
        if record.levelno == logging.ERROR:
            return ansi_color('red', record.levelname) + separator

        return ''

    def format(self, record):
        if isinstance(record.msg, six.binary_type):
            record.msg = record.msg.decode('utf-8')
        message = super(ConsoleWarningFormatter, self).format(record)
        return '{0}{1}'.format(self.get_level_message(record), message)
