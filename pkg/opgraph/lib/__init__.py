# -*- coding: utf-8 -*-

"""
 opgraph.lib
 ===========
 Numerical primitives, exceptions and helpers shared by the models, the experiments and the command line.

"""
from .exceptions import *
