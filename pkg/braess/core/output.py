"""Запись результатов: JSON со стабильным порядком ключей, JSON lines, CSV."""
import csv
import hashlib
import json
import math
import os

import numpy as np
from django.conf import settings
from django.core.management.base import CommandError


def _plain(value):
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def canonical_json(payload):
    return json.dumps(_plain(payload), sort_keys=True,
                      separators=(',', ':'), ensure_ascii=False)


def digest(payload):
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def with_schema(payload):
    return {'schema_version': settings.SCHEMA_VERSION, **payload}


def _ensure_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise CommandError(f'cannot create output directory {path}: {exc}')


def _write(path, text):
    _ensure_dir(os.path.dirname(path) or '.')
    try:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    except OSError as exc:
        raise CommandError(f'cannot write {path}: {exc}')
    return path


def write_text(path, text):
    return _write(path, text)


def write_json(path, payload):
    text = json.dumps(_plain(with_schema(payload)), sort_keys=True,
                      indent=2, ensure_ascii=False)
    return _write(path, text + '\n')


def write_jsonl(path, rows):
    lines = [canonical_json(row) for row in rows]
    return _write(path, ''.join(line + '\n' for line in lines))


def write_csv(path, header, rows):
    _ensure_dir(os.path.dirname(path) or '.')
    try:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(header)
            writer.writerows(_plain(list(rows)))
    except OSError as exc:
        raise CommandError(f'cannot write {path}: {exc}')
    return path


def read_text(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise CommandError(f'cannot read {path}: {exc}')
