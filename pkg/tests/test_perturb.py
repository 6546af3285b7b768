from tests.utils import read_json, read_lines, run_command


class TestPerturbCommand:

    def test_two_triangles_additions(self, out_dir, write_config, two_triangles):
        config = write_config({'fixture': two_triangles, 'kind': 'add'})
        run_command('perturb', config=config, out=str(out_dir))
        summary = read_json(out_dir / 'summary.json')
        estimate = summary['estimates'][0]
        assert estimate['a_minus'] == 0.0, (
            'Проверьте, что на несвязном графе добавление ребра не уменьшает щель'
        )
        assert estimate['sample_count'] == 9, (
            'Проверьте, что перебираются все 9 пар между треугольниками'
        )
        verdicts = read_lines(out_dir / 'verdicts.jsonl')
        assert len(verdicts) == 9 and all(row['gap_delta'] > 0 for row in verdicts), (
            'Проверьте, что `verdicts.jsonl` содержит вердикт на каждую пару'
        )

    def test_removals_are_monotone(self, out_dir, write_config):
        config = write_config({
            'n': 60, 'p': 0.5, 'kind': 'remove', 'sample_size': 100,
        })
        run_command('perturb', config=config, seed=3, out=str(out_dir))
        estimate = read_json(out_dir / 'summary.json')['estimates'][0]
        assert estimate['laplacian_monotone_count'] == estimate['sample_count'], (
            'Проверьте, что λ₂ комбинаторного лапласиана не растёт при удалении рёбер'
        )
        assert abs(estimate['r_minus'] + estimate['r_plus'] - 1) < 1e-12, (
            'Проверьте, что r₋ = 1 - r₊'
        )

    def test_both_kinds_csv(self, out_dir, write_config):
        config = write_config({
            'n': 40, 'p': 0.5, 'kind': 'both', 'sample_size': 20,
            'format': 'csv',
        })
        run_command('perturb', config=config, out=str(out_dir))
        lines = (out_dir / 'verdicts.csv').read_text(encoding='utf-8').splitlines()
        assert lines[0].startswith('graph_seed,pair,kind'), (
            'Проверьте заголовок `verdicts.csv`'
        )
        assert len(lines) == 41, (
            'Проверьте, что в CSV по строке на каждый вердикт'
        )
        kinds = [item['kind'] for item in read_json(out_dir / 'summary.json')['estimates']]
        assert kinds == ['addition', 'removal']
