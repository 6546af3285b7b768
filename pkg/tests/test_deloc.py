import csv

from tests.utils import read_json, run_command


class TestDelocCommand:

    def test_deloc_outputs(self, out_dir, write_config):
        config = write_config({
            'n': 200, 'p': 0.5, 'scale': 0.1, 'all_adjacency': True,
            'linf_exponent': 1.0,
        })
        run_command('deloc', config=config, out=str(out_dir))
        result = read_json(out_dir / 'profiles.json')['profiles'][0]
        assert result['second']['fraction_above'] >= 0.4, (
            'Проверьте долю компонент v₂ выше порога 0.1/√n'
        )
        assert len(result['adjacency']) == 199, (
            'Проверьте, что профили строятся для всех v_j(A), j >= 2'
        )
        assert result['linf']['holds'], 'Проверьте оценку ‖v‖_∞ для C = 1'
        with open(out_dir / 'sweep.csv', encoding='utf-8') as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ['graph_seed', 'C', 'fraction_above'], (
            'Проверьте заголовок `sweep.csv`'
        )
        fractions = [float(row[2]) for row in rows[1:]]
        assert fractions == sorted(fractions), (
            'Проверьте, что доля выше порога не убывает по C'
        )

    def test_deloc_histogram(self, out_dir, write_config, two_triangles):
        config = write_config({'fixture': two_triangles})
        run_command('deloc', config=config, out=str(out_dir))
        with open(out_dir / 'histogram.csv', encoding='utf-8') as handle:
            rows = list(csv.reader(handle))[1:]
        assert len(rows) == 64 and sum(int(row[3]) for row in rows) == 6, (
            'Проверьте, что гистограмма имеет 64 корзины и учитывает все компоненты'
        )
