import os

from core.forms import TypicalForm
from core.management.base import ExperimentCommand, load_graphs
from core.output import digest, write_csv, write_json
from typicality.checks import certify


class Command(ExperimentCommand):
    help = ('Проверяет типичность графа G(n, p); код выхода 2, '
            'если свойство опровергнуто.')
    form_class = TypicalForm

    def run(self, config, manifest):
        reports = []
        for seed, g in load_graphs(config):
            report = certify(
                g, config['p'],
                subset_samples=config['subset_samples'],
                seed=seed,
                extended=config['extended'],
                trial_vectors=config['trial_vectors'],
                alpha=config.get('alpha'),
                jobs=config['jobs'],
            )
            payload = report.to_dict()
            reports.append(payload)
            manifest.record(seed, digest(payload))
            style = (self.style.SUCCESS if report.certified
                     else self.style.WARNING)
            self.stdout.write(style(
                f'seed {seed}: '
                f'{"certified" if report.certified else "refuted"}'))
        out = config['out']
        if config['format'] == 'csv':
            write_csv(
                os.path.join(out, 'report.csv'),
                ['seed', 'name', 'holds', 'margin'],
                [[report['seed'], check['name'], check['holds'],
                  check['margin']]
                 for report in reports for check in report['properties']])
        write_json(os.path.join(out, 'report.json'), {'reports': reports})
        certified = sum(report['certified'] for report in reports)
        self.stdout.write(f'certified {certified}/{len(reports)}')
        if certified < len(reports):
            return f'typicality refuted on {len(reports) - certified} graph(s)'
        return None
