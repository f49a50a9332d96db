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

""" **Template data**: walls, strips, half and finite templates, and self-similar template data. """

from __future__ import annotations

from templatelab.base.definitions import *
from enum import IntEnum, auto


class WallSpec(NamedTuple):
    """ A wall. Boundary walls carry one gluing line and no angle."""
    alpha: Optional[float] = None   #: The angle in (0, pi) between the wall's two gluing lines, or None on a boundary wall.


class StripSpec(NamedTuple):
    """ A directed strip joining consecutive walls."""
    width: float    #: The strip width, which must be positive unless ``degenerate_ok``.
    eps: float      #: Signed offset of the forward wall's origin above the backward wall's origin (or the anchor), along the strip.
    degenerate_ok: bool = False     #: Whether width 0 is permitted.


class TemplateData(NamedTuple):
    """ A finite or half template. Strip ``i`` joins wall ``i`` to wall ``i+1``."""

    class Kind(IntEnum):
        """ Enum to specify the kind of template."""
        FINITE = auto()
        HALF = auto()

    kind: TemplateData.Kind
    walls: Tuple[WallSpec, ...]
    strips: Tuple[StripSpec, ...]
    anchor: float = 0.0     #: Coordinate on the first gluing line of the reference point for the first strip's eps.

    @property
    def n_walls(self) -> int:
        return len(self.walls)

    @property
    def interior(self) -> range:
        """ Indices of the interior walls, which must carry an angle."""
        return range(1, self.n_walls - 1 if self.kind == TemplateData.Kind.FINITE else self.n_walls)

    @property
    def widths(self) -> Tuple[float, ...]:
        return tuple(strip.width for strip in self.strips)

    @property
    def epss(self) -> Tuple[float, ...]:
        return tuple(strip.eps for strip in self.strips)

    @property
    def alphas(self) -> Tuple[Optional[float], ...]:
        return tuple(wall.alpha for wall in self.walls)

    def offset(self, i: int) -> float:
        """ The coordinate of wall ``i+1``'s origin along the far line of strip ``i``, in the strip's intrinsic coordinates.

        Intrinsic coordinates on wall 0 and strip 0 start at coordinate 0 of the first gluing line, so the first strip's eps,
        measured from the anchor, is shifted by the anchor.
        """
        return self.strips[i].eps + (self.anchor if i == 0 else 0.0)

    @property
    def beta_max(self) -> float:
        """ The minimum over interior walls of ``min(alpha, pi - alpha)``, or pi/2 if there are none."""
        angles = [min(self.walls[i].alpha, math.pi - self.walls[i].alpha) for i in self.interior if self.walls[i].alpha is not None]
        return min(angles, default=HALF_PI)

    def prefix(self, n_walls: int) -> TemplateData:
        """ The half template of the first ``n_walls`` walls."""
        if not 2 <= n_walls <= self.n_walls:
            raise ValueError(f'Cannot take a prefix of {n_walls} walls from a template of {self.n_walls} walls.')
        return TemplateData(TemplateData.Kind.HALF if n_walls < self.n_walls else self.kind, self.walls[:n_walls], self.strips[:n_walls - 1],
                            self.anchor)


class SelfSimilarData(NamedTuple):
    """ The data ``(beta; l0, eps0, l1, eps1)`` of a self-similar template, with ``l_{i+2j} = 2^j l_i`` and ``eps_{i+2j} = 2^j eps_i``."""
    beta: float
    l0: float
    eps0: float
    l1: float
    eps1: float

    def check(self) -> SelfSimilarData:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: Unless ``0 < beta < pi`` and ``l0, l1 > 0``, all finite.
        """
        if not all(math.isfinite(value) for value in self):
            raise ValueError(f'Non-finite self-similar data {self}.')
        if not 0.0 < self.beta < math.pi:
            raise ValueError(f'beta = {self.beta} is outside (0, pi).')
        if not (self.l0 > 0.0 and self.l1 > 0.0):
            raise ValueError(f'Self-similar widths l0 = {self.l0}, l1 = {self.l1} must be positive.')
        return self

    def strip(self, k: int) -> Tuple[float, float]:
        """ ``(width, eps)`` of the strip with global index ``k >= 0``."""
        doublings = k // 2
        return (math.ldexp(self.l1 if k % 2 else self.l0, doublings),
                math.ldexp(self.eps1 if k % 2 else self.eps0, doublings))

    def scaled(self, c: float) -> SelfSimilarData:
        return SelfSimilarData(self.beta, c * self.l0, c * self.eps0, c * self.l1, c * self.eps1)


def validate(t: TemplateData, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> List[str]:
    """ Check a template against the template conditions.

    Args:
        t: The template to check.
        tol: The tolerance policy.
    Returns: A list of violations, each naming the offending wall or strip. Empty iff ``t`` is valid.
    """
    violations = []
    if t.n_walls < 2:
        violations.append(f'template has {t.n_walls} walls, at least 2 are required')
    if len(t.strips) != t.n_walls - 1:
        violations.append(f'template has {t.n_walls} walls but {len(t.strips)} strips')
    if not math.isfinite(t.anchor):
        violations.append(f'anchor {t.anchor} is not finite')
    interior = set(t.interior)
    for i, wall in enumerate(t.walls):
        if i in interior:
            if wall.alpha is None:
                violations.append(f'alpha missing at wall {i}')
            elif not (math.isfinite(wall.alpha) and tol.eps_angle < wall.alpha < math.pi - tol.eps_angle):
                violations.append(f'alpha out of (0,π) at wall {i}')
        elif wall.alpha is not None:
            violations.append(f'alpha present at boundary wall {i}')
    for i, strip in enumerate(t.strips):
        if not (math.isfinite(strip.width) and math.isfinite(strip.eps)):
            violations.append(f'non-finite data at strip {i}')
        elif strip.width < 0.0:
            violations.append(f'negative width at strip {i}')
        elif strip.width <= tol.eps_length and not strip.degenerate_ok:
            violations.append(f'zero width at strip {i}')
    return violations


def require_valid(t: TemplateData, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> TemplateData:
    """ Returns ``t``, for chaining calls.

    Raises:
        ValueError: Listing every violation, if ``t`` is invalid.
    """
    violations = validate(t, tol)
    if violations:
        raise ValueError('Invalid template: ' + '; '.join(violations) + '.')
    return t


def expand_self_similar(s: SelfSimilarData, n_walls: int, start_index: int = 0) -> TemplateData:
    """ The half template of ``n_walls`` walls beginning at global strip index ``start_index`` of the self-similar template ``s``.

    Args:
        s: The self-similar data.
        n_walls: The number of walls, at least 2.
        start_index: The global index of the first strip.
    Returns: A half template whose strip ``i`` is global strip ``start_index + i``, and whose interior angles are all ``s.beta``.
    Raises:
        ValueError: If ``n_walls < 2``, ``start_index < 0`` or ``s`` is invalid.
    """
    s.check()
    if n_walls < 2:
        raise ValueError(f'n_walls = {n_walls} must be at least 2.')
    if start_index < 0:
        raise ValueError(f'start_index = {start_index} must be non-negative.')
    walls = (WallSpec(None),) + (WallSpec(s.beta),) * (n_walls - 1)
    strips = tuple(StripSpec(*s.strip(start_index + i)) for i in range(n_walls - 1))
    return TemplateData(TemplateData.Kind.HALF, walls, strips)


def scale(t: TemplateData, c: float) -> TemplateData:
    """ Rescale the metric of ``t`` by ``c``: widths and displacements are multiplied by ``c``, angles are unchanged.

    Raises:
        ValueError: If ``c <= 0``.
    """
    if not c > 0.0:
        raise ValueError(f'Scale factor {c} must be positive.')
    return t._replace(strips=tuple(strip._replace(width=c * strip.width, eps=c * strip.eps) for strip in t.strips), anchor=c * t.anchor)
