"""Конфигурации экспериментов: валидация параметров до любых вычислений."""
from django import forms
from django.conf import settings

from core.acceptance import CRITERIA
from delocalization.concentration import EXACT, MONTE_CARLO

FORMAT_CHOICES = (('json', 'json'), ('csv', 'csv'))


def _int_list(value, name):
    if not isinstance(value, list) or not value or not all(
            isinstance(item, int) and not isinstance(item, bool)
            and item >= 0 for item in value):
        raise forms.ValidationError(
            f'{name} must be a non-empty list of non-negative integers')
    return value


def _float_list(value, name):
    if not isinstance(value, list) or not value or not all(
            isinstance(item, (int, float)) and not isinstance(item, bool)
            for item in value):
        raise forms.ValidationError(f'{name} must be a non-empty list of numbers')
    return [float(item) for item in value]


class ExperimentForm(forms.Form):
    """Общие поля: зёрна, каталог вывода, формат, число потоков."""
    DEFAULTS = {'seed': 0, 'out': 'results', 'format': 'json'}

    seed = forms.IntegerField(min_value=0, max_value=2 ** 64 - 1,
                              required=False)
    seeds = forms.JSONField(required=False)
    out = forms.CharField(required=False)
    format = forms.ChoiceField(choices=FORMAT_CHOICES, required=False)
    jobs = forms.IntegerField(min_value=1, required=False)

    def __init__(self, data=None, **kwargs):
        merged = dict(self.DEFAULTS)
        merged.update({
            key: value for key, value in (data or {}).items()
            if value is not None
        })
        super().__init__(merged, **kwargs)

    def clean_seeds(self):
        seeds = self.cleaned_data.get('seeds')
        if seeds in (None, ''):
            return None
        return _int_list(seeds, 'seeds')

    def clean_jobs(self):
        jobs = self.cleaned_data.get('jobs')
        return settings.BRAESS_JOBS if jobs is None else jobs

    def clean(self):
        cleaned = super().clean()
        if cleaned.get('seeds') is None and 'seed' in cleaned:
            cleaned['seeds'] = [cleaned['seed']]
        return cleaned


class GraphSourceForm(ExperimentForm):
    """Граф берётся из файла-фикстуры либо сэмплируется из G(n, p)."""
    P_REQUIRED = False

    fixture = forms.CharField(required=False)
    n = forms.IntegerField(min_value=2, required=False)
    p = forms.FloatField(required=False)

    def clean_p(self):
        p = self.cleaned_data.get('p')
        if p is not None and not 0 < p < 1:
            raise forms.ValidationError('p must lie in (0, 1)')
        return p

    def clean(self):
        cleaned = super().clean()
        has_spec = (cleaned.get('n') is not None
                    and cleaned.get('p') is not None)
        if not cleaned.get('fixture') and not has_spec:
            raise forms.ValidationError(
                'either a fixture or both n and p are required')
        if self.P_REQUIRED and cleaned.get('p') is None:
            self.add_error('p', 'p is required for this experiment')
        return cleaned


class SampleForm(ExperimentForm):
    n = forms.IntegerField(min_value=2)
    p = forms.FloatField()

    def clean_p(self):
        p = self.cleaned_data['p']
        if not 0 < p < 1:
            raise forms.ValidationError('p must lie in (0, 1)')
        return p


class PerturbForm(GraphSourceForm):
    DEFAULTS = {**ExperimentForm.DEFAULTS, 'kind': 'add',
                'sample_size': 2000}

    kind = forms.ChoiceField(choices=(
        ('add', 'add'), ('remove', 'remove'), ('both', 'both')))
    sample_size = forms.IntegerField(min_value=1)


class TypicalForm(GraphSourceForm):
    P_REQUIRED = True
    DEFAULTS = {**ExperimentForm.DEFAULTS, 'subset_samples': 200,
                'trial_vectors': 100, 'extended': True}

    subset_samples = forms.IntegerField(min_value=0)
    trial_vectors = forms.IntegerField(min_value=0)
    extended = forms.BooleanField(required=False)
    alpha = forms.FloatField(min_value=0.0, required=False)


class DelocForm(GraphSourceForm):
    DEFAULTS = {
        **ExperimentForm.DEFAULTS,
        'c_exponent': 1.0,
        'exponents': [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0],
        'eta': 0.1,
        'all_adjacency': False,
        'extended': False,
    }

    c_exponent = forms.FloatField(min_value=0.0)
    scale = forms.FloatField(min_value=0.0, required=False)
    exponents = forms.JSONField()
    eta = forms.FloatField(min_value=0.0, max_value=0.5)
    linf_exponent = forms.FloatField(min_value=0.0, required=False)
    all_adjacency = forms.BooleanField(required=False)
    extended = forms.BooleanField(required=False)

    def clean_exponents(self):
        return _float_list(self.cleaned_data.get('exponents'), 'exponents')


class ConcForm(ExperimentForm):
    DEFAULTS = {
        **ExperimentForm.DEFAULTS,
        'check': 'lo',
        'p': 0.5,
        'r': 1.0,
        'method': EXACT,
        'trials': 10 ** 6,
        'd': 3,
        'dimension': 8,
    }

    check = forms.ChoiceField(choices=(('lo', 'lo'), ('rv', 'rv')))
    weights = forms.JSONField(required=False)
    m = forms.IntegerField(min_value=0, required=False)
    p = forms.FloatField()
    r = forms.FloatField(min_value=0.0)
    method = forms.ChoiceField(choices=((EXACT, EXACT),
                                        (MONTE_CARLO, MONTE_CARLO)))
    trials = forms.IntegerField(min_value=1)
    d = forms.IntegerField(min_value=1)
    dimension = forms.IntegerField(min_value=2, max_value=20)

    def clean_p(self):
        p = self.cleaned_data['p']
        if not 0 < p < 1:
            raise forms.ValidationError('p must lie in (0, 1)')
        return p

    def clean(self):
        cleaned = super().clean()
        weights, m = cleaned.get('weights'), cleaned.get('m')
        if weights in (None, ''):
            if m is None:
                raise forms.ValidationError('either weights or m is required')
            cleaned['weights'] = [1.0] * m
        else:
            cleaned['weights'] = _float_list(weights, 'weights')
        check, r = cleaned.get('check'), cleaned.get('r')
        d, dimension = cleaned.get('d'), cleaned.get('dimension')
        if check == 'lo' and r is not None and r < 1:
            self.add_error('r', 'Littlewood-Offord radius must be >= 1')
        if check == 'rv' and None not in (d, dimension) and d >= dimension:
            self.add_error('d', 'd must be smaller than the dimension')
        return cleaned


class ReproduceForm(ExperimentForm):
    DEFAULTS = {**ExperimentForm.DEFAULTS, 'profile': 'full'}

    profile = forms.ChoiceField(choices=(('full', 'full'),
                                         ('smoke', 'smoke')))
    criteria = forms.JSONField(required=False)
    zero_tolerance = forms.FloatField(min_value=0.0, required=False)

    def clean_criteria(self):
        criteria = self.cleaned_data.get('criteria')
        if criteria in (None, ''):
            return None
        criteria = _int_list(criteria, 'criteria')
        unknown = sorted(set(criteria) - set(CRITERIA))
        if unknown:
            raise forms.ValidationError(f'unknown criteria: {unknown}')
        return criteria
