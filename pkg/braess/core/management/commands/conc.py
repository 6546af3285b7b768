import os

from core.forms import ConcForm
from core.management.base import ExperimentCommand
from core.output import digest, write_csv, write_json
from delocalization.concentration import (BernoulliSumSpec,
                                          conc_monte_carlo_1d,
                                          lo_bound_check,
                                          rv_projection_check)


class Command(ExperimentCommand):
    help = ('Функция концентрации сумм Бернулли: оценка Литтлвуда-Оффорда '
            'и оценка для проекций.')
    form_class = ConcForm

    def run(self, config, manifest):
        spec = BernoulliSumSpec(tuple(config['weights']), config['p'])
        results = []
        for seed in config['seeds']:
            if config['check'] == 'lo':
                check = lo_bound_check(
                    spec, config['r'], config['method'], config['trials'],
                    seed, jobs=config['jobs'])
                result = check.to_dict()
                self.stdout.write(
                    f'seed {seed}: conc {check.estimate.value:.6f}, '
                    f'implied C {check.implied_c:.4f}')
            else:
                check = rv_projection_check(
                    config['d'], config['dimension'], spec, config['r'],
                    config['trials'], seed, jobs=config['jobs'])
                one_dim = conc_monte_carlo_1d(
                    spec, config['r'], config['trials'], seed,
                    config['jobs'])
                result = check.to_dict()
                result['one_dimensional_monte_carlo'] = one_dim.to_dict()
                self.stdout.write(
                    f'seed {seed}: conc {check.estimate.value:.6f}, '
                    f'fitted C {check.fitted_c:.4f}')
            result['seed'] = seed
            results.append(result)
            manifest.record(seed, digest(result))
        out = config['out']
        if config['format'] == 'csv':
            write_csv(
                os.path.join(out, 'conc.csv'),
                ['seed', 't', 'value', 'method', 'standard_error'],
                [[row['seed'], row['estimate']['t'], row['estimate']['value'],
                  row['estimate']['method'],
                  row['estimate']['standard_error']] for row in results])
        write_json(os.path.join(out, 'conc.json'),
                   {'check': config['check'], 'results': results})
