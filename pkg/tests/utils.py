import json
from io import StringIO

from django.core.management import call_command


def run_command(name, **options):
    stdout = StringIO()
    call_command(name, stdout=stdout, **options)
    return stdout.getvalue()


def read_json(path):
    with open(path, encoding='utf-8') as handle:
        return json.load(handle)


def read_lines(path):
    with open(path, encoding='utf-8') as handle:
        return [json.loads(line) for line in handle if line.strip()]
