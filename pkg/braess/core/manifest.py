"""Манифест запуска: эхо конфигурации, версия, длительность, дайджесты."""
import os
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Dict

import braess

from .output import _plain, write_json


@dataclass
class RunManifest:
    command: str
    config: Dict
    artifact_version: str = braess.__version__
    started_at: str = ''
    duration_seconds: float = 0.0
    digests: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._clock = time.monotonic()
        self.started_at = datetime.now(timezone.utc).isoformat()

    def record(self, key, value):
        self.digests[str(key)] = value

    def finish(self, out):
        self.duration_seconds = round(time.monotonic() - self._clock, 3)
        payload = {key: value for key, value in asdict(self).items()}
        payload['config'] = _plain(self.config)
        return write_json(os.path.join(out, 'manifest.json'), payload)
