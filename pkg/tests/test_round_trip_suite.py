import logging

import pytest
import yaml

from opgraph import Q_
from opgraph.experiment import Experiment, RoundTripSuite, SuiteResult
from opgraph.lib.exceptions import ParameterError
from opgraph.lib.general_functions import start_logger, stop_logger


def test_experiment_needs_a_dictionary():
    with pytest.raises(ParameterError):
        Experiment(['suite'])
    experiment = Experiment({'suite': {'dims': [2]}, 'name': 'test'})
    assert experiment.name == 'test'
    with pytest.raises(NotImplementedError):
        experiment.run()


def test_defaults_come_from_config():
    suite = RoundTripSuite()
    assert suite.settings['dims'] == [2, 3, 4, 5, 6]
    assert suite.settings['instances'] == 100
    assert suite.settings['kinds'] == ['duan', 'geometric']


def test_tasks_are_reproducible():
    measure = {'suite': {'dims': [2, 4], 'instances': 5, 'seed': 9, 'kinds': ['duan']}}
    tasks = RoundTripSuite(measure).tasks()
    assert tasks == RoundTripSuite(measure).tasks()
    assert len(tasks) == 10
    for dim_h, dim_s, seed, kinds in tasks:
        assert 1 <= dim_s <= dim_h ** 2
        assert kinds == ('duan',)
    other = RoundTripSuite({'suite': {'dims': [2, 4], 'instances': 5, 'seed': 10, 'kinds': ['duan']}}).tasks()
    assert other != tasks


@pytest.mark.parametrize('settings', [
    {'dims': []},
    {'dims': [0, 2]},
    {'instances': -1},
    {'kinds': ['spectral']},
    {'processes': 0},
    {'seed': 'zero'},
])
def test_invalid_settings(settings):
    with pytest.raises(ParameterError):
        RoundTripSuite({'suite': settings})


def test_from_file(tmp_path):
    filename = tmp_path / 'suite.yml'
    filename.write_text(yaml.safe_dump({'suite': {'dims': [2], 'instances': 4, 'kinds': ['geometric']}}))
    suite = RoundTripSuite.from_file(str(filename))
    assert suite.settings['instances'] == 4
    result = suite.run()
    assert isinstance(result, SuiteResult)
    assert len(result.rows) == 4
    assert result.verdict
    assert all(row['kind'] == 'geometric' for row in result.rows)


def test_run_in_a_pool_gives_the_same_rows():
    measure = {'suite': {'dims': [2, 3], 'instances': 3, 'seed': 1}}
    serial = RoundTripSuite(measure).run()
    measure['suite']['processes'] = 2
    parallel = RoundTripSuite(measure).run()
    assert [(r['dim_h'], r['dim_s'], r['seed'], r['kind'], r['verdict']) for r in serial.rows] == \
        [(r['dim_h'], r['dim_s'], r['seed'], r['kind'], r['verdict']) for r in parallel.rows]


def test_suite_result_summary():
    rows = [
        {'dim_h': 2, 'dim_s': 3, 'seed': 1, 'kind': 'duan', 'verdict': True, 'distance': 1e-15,
         'failed_stage': None},
        {'dim_h': 2, 'dim_s': 4, 'seed': 2, 'kind': 'duan', 'verdict': False, 'distance': None,
         'failed_stage': 'synthesis'},
    ]
    result = SuiteResult(rows, Q_(1.5, 's'))
    assert not result.verdict
    assert result.worst_distance == 1e-15
    assert result.failures == [rows[1]]
    data = result.to_dict()
    assert data['failures'] == 1
    assert data['elapsed_s'] == 1.5
    assert 'n = 2, duan: 1/2 passed' in str(result)


def test_start_and_stop_logger():
    start_logger(2)
    package_logger = logging.getLogger('opgraph')
    assert package_logger.level == logging.DEBUG
    handlers = len(package_logger.handlers)
    start_logger(0)
    assert len(package_logger.handlers) == handlers
    assert package_logger.level == logging.WARNING
    stop_logger()
    assert len(package_logger.handlers) == handlers - 1


@pytest.mark.slow
def test_round_trip_holds_on_random_systems():
    """ 100 random systems for every n in 2..6 and both constructions."""
    result = RoundTripSuite({'suite': {'dims': [2, 3, 4, 5, 6], 'instances': 100, 'seed': 0}}).run()
    assert len(result.rows) == 1000
    assert result.verdict, result.failures[:5]
    assert result.worst_distance <= 1e-8
