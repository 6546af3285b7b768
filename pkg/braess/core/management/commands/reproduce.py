import os

from core.acceptance import AcceptanceContext, run_suite
from core.forms import ReproduceForm
from core.management.base import ExperimentCommand
from core.output import digest, write_csv, write_json


class Command(ExperimentCommand):
    help = ('Прогоняет приёмочные критерии и пишет таблицу pass/fail; '
            'ненулевой код выхода при любом провале.')
    form_class = ReproduceForm

    def run(self, config, manifest):
        context = AcceptanceContext(
            seed=config['seed'],
            jobs=config['jobs'],
            zero_tolerance=config.get('zero_tolerance'),
        )
        results = run_suite(config.get('criteria'), config['profile'], context)
        rows = [result.to_dict() for result in results]
        for result in results:
            manifest.record(f'criterion_{result.number}', result.digest)
            style = self.style.SUCCESS if result.passed else self.style.ERROR
            self.stdout.write(style(
                f'{result.number:>2} {result.name:<26} '
                f'{"pass" if result.passed else "FAIL"}'))
        out = config['out']
        if config['format'] == 'csv':
            write_csv(os.path.join(out, 'acceptance.csv'),
                      ['number', 'name', 'passed', 'digest'],
                      [[row['number'], row['name'], row['passed'],
                        row['digest']] for row in rows])
        write_json(os.path.join(out, 'acceptance.json'), {
            'profile': config['profile'],
            'seed': config['seed'],
            'criteria': rows,
        })
        manifest.record('acceptance', digest(rows))
        failed = [result.number for result in results if not result.passed]
        if failed:
            return f'acceptance criteria failed: {failed}'
        return None
