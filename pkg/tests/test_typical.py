import pytest
from django.core.management.base import CommandError

from tests.utils import read_json, run_command


class TestTypicalCommand:

    def test_complete_graph_is_refuted(self, out_dir, write_config, complete_graph):
        config = write_config({'fixture': complete_graph, 'p': 0.1, 'extended': False})
        with pytest.raises(CommandError) as error:
            run_command('typical', config=config, out=str(out_dir))
        assert error.value.returncode == 2, (
            'Проверьте, что опровержение типичности завершается с кодом 2'
        )
        report = read_json(out_dir / 'report.json')['reports'][0]
        assert report['certified'] is False, (
            'Проверьте, что отчёт `report.json` пишется и при опровержении'
        )

    def test_malformed_fixture(self, out_dir, write_config, malformed_graph):
        config = write_config({'fixture': malformed_graph, 'p': 0.5})
        with pytest.raises(CommandError) as error:
            run_command('typical', config=config, out=str(out_dir))
        assert error.value.returncode == 1, (
            'Проверьте, что испорченная фикстура завершается с кодом 1'
        )

    def test_random_graph_is_certified(self, out_dir, write_config):
        config = write_config({
            'n': 300, 'p': 0.5, 'subset_samples': 20, 'trial_vectors': 10,
        })
        output = run_command('typical', config=config, out=str(out_dir))
        assert 'certified 1/1' in output, (
            'Проверьте, что типичный граф G(300, 0.5) сертифицируется'
        )
        names = {check['name'] for check in read_json(out_dir / 'report.json')['reports'][0]['properties']}
        assert 'normalization_approx' in names, (
            'Проверьте, что расширенные проверки попадают в отчёт'
        )

    def test_zero_alpha(self, out_dir, write_config):
        config = write_config({
            'n': 300, 'p': 0.5, 'subset_samples': 10, 'trial_vectors': 5,
            'alpha': 0,
        })
        run_command('typical', config=config, out=str(out_dir))
        checks = {
            check['name']: check
            for check in read_json(out_dir / 'report.json')['reports'][0]['properties']
        }
        assert checks['small_entry_mass']['holds'] is True, (
            'Проверьте, что при alpha = 0 оценка массы малых координат пуста и выполняется'
        )
