# -*- coding: utf-8 -*-
"""
    opgraph
    =======
    Operator systems, quantum channels in Kraus form and the operator graphs that connect them.

    The package root exposes the unit registry used for the few physical quantities that appear in reports
    (wall-clock durations of pipelines).
"""
from pint import UnitRegistry

__version__ = '0.1'

ureg = UnitRegistry()
Q_ = ureg.Quantity
