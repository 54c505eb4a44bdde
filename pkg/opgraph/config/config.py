# -*- coding: utf-8 -*-
"""
Configuration
==============

Config file that specifies the constants employed in the code, mostly numerical tolerances.
A normal user shouldn't interact with this file unless there is an extreme need to change the default behaviour.

For overwriting or adding new values to the config, the following should be done

.. code-block:: python

    from opgraph.config import Config
    Config.Tolerance.membership = 1e-7
    Config.Duan.alpha = 0.25

Values are read at call time, so every function of opgraph sees the new values from that point on.
Remember that you are modifying the class properties, not an instance of the Config class.

Tolerances are relative: a factor ``t`` is applied as ``t * max(1, ||A||_F)`` to the matrix ``A`` being checked,
except where noted.

"""


class Config(object):
    class Tolerance:
        """ Numerical tolerances."""
        relative = 1e-10  # Hermiticity, eigen-decomposition and positivity slack.
        sqrt = 1e-8  # Accuracy of R @ R against A for square roots.
        rank = 1e-9  # Gram-Schmidt residuals below this are dependent.
        generator_floor = 1e-13  # Generators this small against the largest one, or the identity, are zero.
        orthonormality = 1e-9  # Allowed deviation of a stored basis from orthonormality.
        sum_to_identity = 1e-9  # Per unit of dimension n.
        membership = 1e-8
        equality = 1e-8  # Frobenius distance between projectors, absolute.
        trace_preservation = 1e-9  # Per unit of input dimension n.
        load_trace_preservation = 1e-6  # Per unit of input dimension n, used when reading files.
        kraus_orthogonality = 1e-8
        unit_vector = 1e-9  # Absolute.
        distinguishability = 1e-9  # Absolute.
        serialization = 1e-12  # Absolute, entrywise.

    class Duan:
        """ Constants of the effect basis built from an arbitrary Hermitian basis."""
        alpha = 0.5  # Applied after normalizing each direction to operator norm 1.
        beta_margin = 2.0  # beta = 1 / (beta_margin * lambda_max(sum of F_k))

    class Geometric:
        """ Constants of the geometric effect sequence."""
        radius = 0.5  # Radius of the ball around the identity where the directions are placed.

    class Random:
        max_attempts = 20  # Redraws allowed when a random system comes out with the wrong dimension.

    class Format:
        """ Text format of the files."""
        name = 'opgraph'
        version = '1.0'
        encoding = 'utf-8'

    class Suite:
        """ Defaults for the round-trip suite."""
        dims = [2, 3, 4, 5, 6]
        instances = 100
        kinds = ['duan', 'geometric']
        seed = 0
        processes = 1

    class Logging:
        format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
