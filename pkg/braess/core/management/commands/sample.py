import os

import numpy as np

from core.forms import SampleForm
from core.management.base import ExperimentCommand
from core.output import digest, write_text
from graphs.graph import GnpSpec, sample_gnp, to_json


class Command(ExperimentCommand):
    help = 'Сэмплирует G(n, p) и сохраняет граф-фикстуру в JSON.'
    form_class = SampleForm

    def run(self, config, manifest):
        for seed in config['seeds']:
            g = sample_gnp(GnpSpec(config['n'], config['p'], seed))
            name = ('graph.json' if len(config['seeds']) == 1
                    else f'graph_seed{seed}.json')
            text = to_json(g)
            write_text(os.path.join(config['out'], name), text)
            manifest.record(seed, digest(text))
            degrees = g.degrees
            self.stdout.write(
                f'seed {seed}: {g.edge_count} edges, degrees '
                f'min {degrees.min()} mean {np.mean(degrees):.2f} '
                f'max {degrees.max()}')
