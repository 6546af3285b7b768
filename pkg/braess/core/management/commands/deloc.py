import os

from core.forms import DelocForm
from core.management.base import ExperimentCommand, load_graphs
from core.output import digest, write_csv, write_json
from delocalization.profiles import (adjacency_profiles, c_sweep,
                                     extended_profiles, linf_family_check,
                                     second_profile)
from spectral.decomposition import GraphSpectra


class Command(ExperimentCommand):
    help = ('Профили делокализации v₂(Â) и собственных векторов A, '
            'таблица по показателю C.')
    form_class = DelocForm

    def run(self, config, manifest):
        c_exponent, scale = config['c_exponent'], config.get('scale')
        results, sweep_rows, histogram_rows = [], [], []
        for seed, g in load_graphs(config):
            spectra = GraphSpectra(g)
            second = second_profile(g, c_exponent, scale, spectra)
            vector = spectra.normalized_adjacency.vector(2)
            sweep = c_sweep(vector, config['exponents'], config['eta'])
            result = {
                'graph_seed': seed,
                'second': second.to_dict(),
                'smallest_c': sweep.smallest_c,
            }
            if config['all_adjacency']:
                profiles = adjacency_profiles(
                    g, c_exponent, scale, spectra, config['jobs'])
                result['adjacency'] = [item.to_dict() for item in profiles]
                result['adjacency_min_fraction'] = min(
                    (item.fraction_above for item in profiles), default=None)
            if config.get('linf_exponent') is not None:
                result['linf'] = linf_family_check(
                    g, config['linf_exponent'], spectra)._asdict()
            if config['extended']:
                result['extended'] = [
                    item.to_dict() for item in extended_profiles(
                        g, c_exponent, scale, spectra, config['jobs'])]
            results.append(result)
            sweep_rows.extend((seed, c, fraction) for c, fraction in sweep.rows)
            histogram_rows.extend(
                (seed, *row) for row in second.histogram_rows())
            manifest.record(seed, digest(result))
            if second.degenerate:
                self.stdout.write(self.style.WARNING(
                    f'seed {seed}: λ₂ is degenerate'))
            self.stdout.write(
                f'seed {seed}: fraction above threshold '
                f'{second.fraction_above:.4f}, smallest C {sweep.smallest_c}')
        out = config['out']
        write_json(os.path.join(out, 'profiles.json'), {'profiles': results})
        write_csv(os.path.join(out, 'sweep.csv'),
                  ['graph_seed', 'C', 'fraction_above'], sweep_rows)
        write_csv(os.path.join(out, 'histogram.csv'),
                  ['graph_seed', 'bin_low', 'bin_high', 'count'],
                  histogram_rows)
