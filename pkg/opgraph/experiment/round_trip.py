# -*- coding: utf-8 -*-
"""
    round_trip
    ==========
    Batch verification of the round trip system -> effect basis -> channel -> operator graph on random operator
    systems. The suite is described by a dictionary, or a YAML file, like::

        suite:
          dims: [2, 3, 4, 5, 6]
          instances: 100
          kinds: [duan, geometric]
          seed: 0
          processes: 4

    For every dimension n the system dimensions d are drawn uniformly from 1..n^2. Missing keys take the values of
    ``Config.Suite``. Instances are independent and run in a :mod:`multiprocessing` pool when ``processes`` is larger
    than one.
"""
import logging
import time
from multiprocessing import Pool

import numpy as np

from .. import Q_
from ..config import Config
from ..lib.exceptions import ParameterError, StageError
from ..models.graph import verify_round_trip
from ..models.operator_system import KINDS, random_system
from .base_experiment import Experiment

logger = logging.getLogger(__name__)


def _run_instance(task):
    """ Runs every kind on one random system. Kept at module level so that it can be sent to worker processes."""
    dim_h, dim_s, seed, kinds = task
    system = random_system(dim_h, dim_s, seed)
    rows = []
    for kind in kinds:
        row = {'dim_h': dim_h, 'dim_s': dim_s, 'seed': seed, 'kind': kind}
        try:
            report = verify_round_trip(system, kind)
        except StageError as e:
            row.update({'verdict': False, 'distance': None, 'failed_stage': e.stage})
        else:
            row.update({'verdict': report.verdict, 'distance': report.distance, 'failed_stage': report.failed_stage})
        rows.append(row)
    return rows


class SuiteResult(object):
    def __init__(self, rows, elapsed):
        self.rows = rows
        self.elapsed = elapsed

    @property
    def verdict(self):
        return all(row['verdict'] for row in self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if not row['verdict']]

    @property
    def worst_distance(self):
        distances = [row['distance'] for row in self.rows if row['distance'] is not None]
        return max(distances) if distances else None

    def to_dict(self):
        return {
            'instances': len(self.rows),
            'failures': len(self.failures),
            'worst_distance': self.worst_distance,
            'elapsed_s': float(self.elapsed.m_as('s')),
            'verdict': self.verdict,
            'failed': [dict(row) for row in self.failures],
        }

    def __str__(self):
        lines = ['Round-trip suite: {} runs, {} failures'.format(len(self.rows), len(self.failures))]
        groups = {}
        for row in self.rows:
            key = (row['dim_h'], row['kind'])
            passed, total = groups.get(key, (0, 0))
            groups[key] = (passed + bool(row['verdict']), total + 1)
        for (dim_h, kind), (passed, total) in sorted(groups.items()):
            lines.append('  n = {}, {}: {}/{} passed'.format(dim_h, kind, passed, total))
        if self.worst_distance is not None:
            lines.append('  worst projector distance: {:.3e}'.format(self.worst_distance))
        lines.append('  elapsed: {:~}'.format(self.elapsed))
        lines.append('  verdict: {}'.format(self.verdict))
        return '\n'.join(lines)


class RoundTripSuite(Experiment):
    def __init__(self, measure=None):
        super().__init__(measure if measure is not None else {})
        settings = {'dims': list(Config.Suite.dims), 'instances': Config.Suite.instances,
                    'kinds': list(Config.Suite.kinds), 'seed': Config.Suite.seed, 'processes': Config.Suite.processes}
        suite = self.dict_measure.get('suite') or {}
        if not isinstance(suite, dict):
            err_str = 'The suite has to be a mapping, got {}'.format(type(suite).__name__)
            logger.error(err_str)
            raise ParameterError(err_str)
        settings.update(suite)
        self.settings = settings
        self.validate()

    def validate(self):
        s = self.settings
        problems = []
        if not s['dims'] or any(not isinstance(n, int) or n < 1 for n in s['dims']):
            problems.append('dims has to be a list of positive integers')
        if not isinstance(s['instances'], int) or s['instances'] < 0:
            problems.append('instances has to be a non-negative integer')
        if not s['kinds'] or any(kind not in KINDS for kind in s['kinds']):
            problems.append('kinds has to be a list with elements of {}'.format(KINDS))
        if not isinstance(s['processes'], int) or s['processes'] < 1:
            problems.append('processes has to be a positive integer')
        if not isinstance(s['seed'], int):
            problems.append('seed has to be an integer')
        if problems:
            err_str = 'Invalid suite: {}'.format('; '.join(problems))
            logger.error(err_str)
            raise ParameterError(err_str)

    def tasks(self):
        """ One (n, d, seed, kinds) tuple per random system. The list only depends on the settings."""
        s = self.settings
        tasks = []
        for dim_h in s['dims']:
            rng = np.random.default_rng([s['seed'], dim_h])
            for _ in range(s['instances']):
                dim_s = int(rng.integers(1, dim_h ** 2 + 1))
                seed = int(rng.integers(2 ** 31))
                tasks.append((dim_h, dim_s, seed, tuple(s['kinds'])))
        return tasks

    def run(self):
        tasks = self.tasks()
        processes = self.settings['processes']
        self.logger.info('Running {} systems with {} process(es)'.format(len(tasks), processes))
        start = time.perf_counter()
        if processes > 1:
            with Pool(processes) as pool:
                results = pool.map(_run_instance, tasks)
        else:
            results = [_run_instance(task) for task in tasks]
        rows = [row for rows in results for row in rows]
        result = SuiteResult(rows, Q_(time.perf_counter() - start, 's'))
        if not result.verdict:
            self.logger.warning('{} of {} round trips failed'.format(len(result.failures), len(rows)))
        self.finalize()
        return result
