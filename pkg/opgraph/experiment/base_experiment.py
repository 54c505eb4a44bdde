# -*- coding: utf-8 -*-

"""
    base_experiment
    ===============
    Base class for the experiments. It provides the basic functions that are common to other experiments: the
    measurement description is a dictionary, normally read from a YAML file, whose top-level keys become attributes.

"""
import logging

from ..lib.exceptions import ParameterError
from ..lib.general_functions import from_yaml_to_dict

logger = logging.getLogger(__name__)


class Experiment(object):
    def __init__(self, measure):
        if not isinstance(measure, dict):
            err_str = 'The measurement has to be described by a dictionary, got {}'.format(type(measure).__name__)
            logger.error(err_str)
            raise ParameterError(err_str)
        self.dict_measure = measure  # Dictionary of the measurement steps
        for d in measure:
            setattr(self, d, measure[d])
        self.logger = logging.getLogger(__name__)
        self.logger.info('Created {} with steps {}'.format(type(self).__name__, list(measure)))

    @classmethod
    def from_file(cls, filename):
        """ Creates the experiment from a YAML file.

        :param filename: File where the measurement is described.
        """
        measure = from_yaml_to_dict(filename)
        if measure is None:
            measure = {}
        logger.debug('Loaded measurement from {}'.format(filename))
        return cls(measure)

    def run(self):
        raise NotImplementedError

    def finalize(self):
        """ What to do when the experiment finishes."""
        self.logger.debug('Finalized {}'.format(type(self).__name__))
