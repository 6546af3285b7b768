import os

from core.forms import PerturbForm
from core.management.base import ExperimentCommand, graph_p, load_graphs
from core.output import digest, write_csv, write_json, write_jsonl
from paradox.estimators import (estimate_add, estimate_remove,
                                window_lower_bound)
from paradox.verdicts import PerturbationVerdict

VERDICT_COLUMNS = list(PerturbationVerdict.__dataclass_fields__)


class Command(ExperimentCommand):
    help = ('Добавляет/удаляет рёбра, сравнивает предикаты с точным '
            'пересчётом λ₂ и оценивает a₋, a₊, r₋, r₊.')
    form_class = PerturbForm

    def run(self, config, manifest):
        kinds = (('add', 'remove') if config['kind'] == 'both'
                 else (config['kind'],))
        summaries = []
        verdict_rows = []
        for seed, g in load_graphs(config):
            p = graph_p(config, g)
            for kind in kinds:
                if kind == 'add':
                    estimate = estimate_add(
                        g, config['sample_size'], seed, p, config['jobs'])
                else:
                    estimate = estimate_remove(
                        g, config['sample_size'], seed, config['jobs'])
                summary = {'graph_seed': seed, 'n': g.n, 'p': p,
                           **estimate.to_dict()}
                if kind == 'add':
                    summary['window'] = window_lower_bound(g, p).to_dict()
                summaries.append(summary)
                rows = [dict(verdict.to_dict(), graph_seed=seed)
                        for verdict in estimate.verdicts]
                verdict_rows.extend(rows)
                manifest.record(f'{seed}:{kind}', digest([summary, rows]))
                self._report(seed, estimate)
        out = config['out']
        if config['format'] == 'csv':
            write_csv(
                os.path.join(out, 'verdicts.csv'),
                ['graph_seed'] + VERDICT_COLUMNS,
                [[row['graph_seed']] + [row[key] for key in VERDICT_COLUMNS]
                 for row in verdict_rows])
        else:
            write_jsonl(os.path.join(out, 'verdicts.jsonl'), verdict_rows)
        write_json(os.path.join(out, 'summary.json'),
                   {'estimates': summaries})

    def _report(self, seed, estimate):
        if estimate.kind == 'addition':
            line = (f'seed {seed}: a- {estimate.a_minus:.4f} '
                    f'a+ {estimate.a_plus:.4f} a0 {estimate.a_zero:.4f}, '
                    f'lemma failures {estimate.lemma_failures}')
            style = (self.style.SUCCESS if not estimate.lemma_failures
                     else self.style.WARNING)
        else:
            line = (f'seed {seed}: r+ {estimate.r_plus:.4f} '
                    f'r- {estimate.r_minus:.4f}, combinatorial monotone '
                    f'{estimate.laplacian_monotone_count}/'
                    f'{estimate.sample_count}')
            style = (self.style.SUCCESS
                     if estimate.laplacian_monotone_count
                     == estimate.sample_count else self.style.WARNING)
        self.stdout.write(style(line))
