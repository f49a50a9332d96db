#  BSD 3-Clause License.
# 
#  Copyright (c) 2019-2024 Robert A. Milton. All rights reserved.
# 
#  Redistribution and use in source and binary forms, with or without modification, are permitted provided that the following conditions are met:
# 
#  1. Redistributions of source code must retain the above copyright notice, this list of conditions and the following disclaimer.
# 
#  2. Redistributions in binary form must reproduce the above copyright notice, this list of conditions and the following disclaimer in the
#     documentation and/or other materials provided with the distribution.
# 
#  3. Neither the name of the copyright holder nor the names of its contributors may be used to endorse or promote products derived from this
#     software without specific prior written permission.
# 
#  THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO,
#  THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
#  CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
#  PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
#  LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE,
#  EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.

""" Type and constant definitions. """

from __future__ import annotations

from typing import *
from pathlib import Path
import logging
import math
import numpy as np
import pandas as pd


EFFECTIVELY_ZERO = 1.0E-64  #: Tolerance when testing floats for equality.
HALF_PI = 0.5 * math.pi     #: The right angle.
TWO_PI = 2.0 * math.pi      #: A full turn.


# noinspection PyPep8Naming
class NP:
    """ Extended numpy types."""
    Array = np.ndarray
    Vector = Array      # Planar vector, shape = (2,)
    Matrix = Array      # Second Order Tensor, shape = (i,j)
    VectorLike = int | float | Sequence[int | float] | Array
    MatrixLike = VectorLike | Sequence[VectorLike]
    ArrayLike = MatrixLike | Sequence[MatrixLike]


class ToleranceConfig(NamedTuple):
    """ The global tolerance policy. Every comparison against zero in templatelab goes through one of these."""
    eps_length: float = 1.0E-9      #: Length tolerance.
    eps_angle: float = 1.0E-12      #: Angle tolerance, in radians.
    boundary_margin: float = 1.0E-6     #: Radians within which a point of A_beta is neither clearly inside nor outside.

    @classmethod
    def make(cls, **kwargs: float) -> ToleranceConfig:
        """ Construct and validate a ToleranceConfig.

        Args:
            **kwargs: Any subset of the fields, overriding the defaults.
        Returns: A validated ToleranceConfig.
        Raises:
            ValueError: If any field is not strictly positive.
        """
        result = cls(**kwargs)
        for field, value in result._asdict().items():
            if not value > 0:
                raise ValueError(f'ToleranceConfig.{field} = {value} must be strictly positive.')
        return result


DEFAULT_TOLERANCE: ToleranceConfig = ToleranceConfig()    #: The default tolerance policy.


class ComputationError(RuntimeError):
    """ A numerical computation failed, as opposed to being handed invalid input."""


class BranchOverflow(ComputationError):
    """ Branch-and-bound exceeded its branch cap."""


class DevelopmentInconsistency(ComputationError):
    """ A development violated the self-similarity equation."""


class OracleError(ComputationError):
    """ A membership oracle is degenerate or inconsistent with any parameter tuple."""


class BudgetExhausted(ComputationError):
    """ A query or iteration budget ran out."""


class ConvergenceError(ComputationError):
    """ An optimization failed to converge."""
