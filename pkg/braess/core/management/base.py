"""Общая основа management-команд экспериментов."""
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import BraessError
from core.manifest import RunManifest
from core.output import read_text
from graphs.graph import GnpSpec, from_json, sample_gnp

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    form_class = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON-файл конфигурации')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--out', help='каталог для результатов')
        parser.add_argument('--format', choices=('json', 'csv'))
        parser.add_argument('--jobs', type=int)

    def load_config(self, options):
        data = {}
        if options.get('config'):
            try:
                data = json.loads(read_text(options['config']))
            except ValueError as exc:
                raise CommandError(
                    f'malformed config {options["config"]}: {exc}')
            if not isinstance(data, dict):
                raise CommandError('config must be a JSON object')
        for key in ('seed', 'out', 'format', 'jobs'):
            if options.get(key) is not None:
                data[key] = options[key]
        if options.get('seed') is not None:
            data.pop('seeds', None)
        form = self.form_class(data)
        if not form.is_valid():
            raise CommandError(f'invalid config: {form.errors.as_json()}')
        return form.cleaned_data

    def handle(self, *args, **options):
        config = self.load_config(options)
        manifest = RunManifest(command=self.name, config=config)
        try:
            refuted = self.run(config, manifest)
        except BraessError as exc:
            raise CommandError(str(exc))
        manifest.finish(config['out'])
        if refuted:
            raise CommandError(refuted, returncode=2)

    @property
    def name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def run(self, config, manifest):
        raise NotImplementedError


def load_graphs(config):
    """(seed, graph) для фикстуры или для каждого зерна G(n, p)."""
    if config.get('fixture'):
        yield config['seed'], from_json(read_text(config['fixture']))
        return
    for seed in config['seeds']:
        yield seed, sample_gnp(GnpSpec(config['n'], config['p'], seed))


def graph_p(config, g):
    """p для предикатов: из конфигурации либо плотность рёбер графа."""
    if config.get('p') is not None:
        return config['p']
    return 2 * g.edge_count / (g.n * (g.n - 1))
