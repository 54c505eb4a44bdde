# -*- coding: utf-8 -*-
"""
    general_functions
    =================
    Place to store general functions that may be used throughout the program.
    They normally refer to functions for interacting with files, the log output, etc.

"""
import logging
import sys

import yaml

from ..config import Config

_handler = None


def from_yaml_to_dict(filename):
    """ Reads a YAML file and returns its content.

    :param filename: File where the data is stored
    :return: dictionary with the data of the file.
    """
    with open(filename, 'r', encoding=Config.Format.encoding) as stream:
        output = yaml.safe_load(stream)
    return output


def write_text(filename, text):
    with open(filename, 'w', encoding=Config.Format.encoding) as stream:
        stream.write(text)


def read_text(filename):
    with open(filename, 'r', encoding=Config.Format.encoding) as stream:
        return stream.read()


def start_logger(verbosity=0):
    """ Sends the log of opgraph to the error stream, with the time of every message.

    :param int verbosity: 0 shows warnings and errors, 1 adds info, 2 or more adds debug.
    """
    global _handler
    stop_logger()
    levels = {0: logging.WARNING, 1: logging.INFO}
    level = levels.get(verbosity, logging.DEBUG)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(Config.Logging.format))
    package_logger = logging.getLogger('opgraph')
    package_logger.addHandler(_handler)
    package_logger.setLevel(level)


def stop_logger():
    global _handler
    if _handler is not None:
        logging.getLogger('opgraph').removeHandler(_handler)
        _handler = None
