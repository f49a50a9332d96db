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

""" SVG pictures of developed chains."""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint
from templatelab.develop.chains import DevelopedChain
from enum import IntEnum, auto
import xml.etree.ElementTree as ET

logger = logging.getLogger(__name__)

VIEWBOX = 1000.0    #: Side of the square viewBox.
MARGIN = 40.0       #: Blank border inside the viewBox.
COLOURS = {'line': 'black', 'band': '#cccccc', 'origin': 'red', 'overlay': 'blue'}


class Overlay(NamedTuple):
    """ An extra item drawn over a chain. A ray is ``(origin, unit direction)``, a segment ``(start, end)``, a point ``(point,)``."""

    class Kind(IntEnum):
        RAY = auto()
        SEGMENT = auto()
        POINT = auto()

    kind: Overlay.Kind
    points: Tuple[PlanarPoint, ...]

    @classmethod
    def ray(cls, origin: PlanarPoint, direction: PlanarPoint) -> Overlay:
        return cls(cls.Kind.RAY, (PlanarPoint(*origin), PlanarPoint(*direction)))

    @classmethod
    def segment(cls, start: PlanarPoint, end: PlanarPoint) -> Overlay:
        return cls(cls.Kind.SEGMENT, (PlanarPoint(*start), PlanarPoint(*end)))

    @classmethod
    def point(cls, point: PlanarPoint) -> Overlay:
        return cls(cls.Kind.POINT, (PlanarPoint(*point),))


class _Viewport:
    """ Uniform map from chain coordinates to the viewBox, with y pointing up."""

    def __call__(self, point: PlanarPoint) -> Tuple[str, str]:
        x = MARGIN + (point[0] - self._lo.x) * self._scale
        y = VIEWBOX - MARGIN - (point[1] - self._lo.y) * self._scale
        return f'{x:.3f}', f'{y:.3f}'

    @property
    def reach(self) -> float:
        """ A length in chain units which spans the whole picture."""
        return 2.0 * self._diameter

    def __init__(self, points: Sequence[PlanarPoint]):
        xs, ys = [p[0] for p in points], [p[1] for p in points]
        self._diameter = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        centre = PlanarPoint(0.5 * (max(xs) + min(xs)), 0.5 * (max(ys) + min(ys)))
        self._lo = centre - PlanarPoint(0.5 * self._diameter, 0.5 * self._diameter)
        self._scale = (VIEWBOX - 2 * MARGIN) / self._diameter


def _line(parent: ET.Element, view: _Viewport, start: PlanarPoint, end: PlanarPoint, colour: str, width: float = 1.5) -> ET.Element:
    (x1, y1), (x2, y2) = view(start), view(end)
    return ET.SubElement(parent, 'line', x1=x1, y1=y1, x2=x2, y2=y2, stroke=colour, **{'stroke-width': f'{width}'})


def _dot(parent: ET.Element, view: _Viewport, point: PlanarPoint, colour: str) -> ET.Element:
    cx, cy = view(point)
    return ET.SubElement(parent, 'circle', cx=cx, cy=cy, r='4', fill=colour)


def build_svg(chain: DevelopedChain, overlays: Sequence[Overlay] = ()) -> ET.Element:
    """ The SVG element picturing ``chain`` with ``overlays``."""
    if not chain.walls:
        raise ValueError('Cannot draw an empty chain.')
    extent = list(chain.origins) + [p for overlay in overlays for p in (overlay.points[:1] if overlay.kind == Overlay.Kind.RAY
                                                                            else overlay.points)]
    view = _Viewport(extent)
    reach = view.reach
    svg = ET.Element('svg', xmlns='http://www.w3.org/2000/svg', version='1.1', width=f'{VIEWBOX:.0f}', height=f'{VIEWBOX:.0f}',
                     viewBox=f'0 0 {VIEWBOX:.0f} {VIEWBOX:.0f}')
    clip = ET.SubElement(ET.SubElement(svg, 'defs'), 'clipPath', id='view')
    ET.SubElement(clip, 'rect', x='0', y='0', width=f'{VIEWBOX:.0f}', height=f'{VIEWBOX:.0f}')
    bands = ET.SubElement(svg, 'g', id='bands', fill=COLOURS['band'], **{'fill-opacity': '0.8', 'clip-path': 'url(#view)'})
    for strip in chain.strips:
        corners = (strip.near.at(-reach), strip.near.at(reach), strip.far.at(reach), strip.far.at(-reach))
        ET.SubElement(bands, 'polygon', points=' '.join(','.join(view(corner)) for corner in corners))
    lines = ET.SubElement(svg, 'g', id='lines', **{'clip-path': 'url(#view)'})
    for wall in chain.walls:
        for line in (wall.entry, wall.exit):
            if line is not None:
                _line(lines, view, line.at(-reach), line.at(reach), COLOURS['line'])
    origins = ET.SubElement(svg, 'g', id='origins')
    for origin in chain.origins:
        _dot(origins, view, origin, COLOURS['origin'])
    extras = ET.SubElement(svg, 'g', id='overlays', **{'clip-path': 'url(#view)'})
    for overlay in overlays:
        match overlay.kind:
            case Overlay.Kind.RAY:
                origin, direction = overlay.points
                _line(extras, view, origin, origin + 2.0 * reach * direction, COLOURS['overlay'], 2.0)
            case Overlay.Kind.SEGMENT:
                _line(extras, view, *overlay.points, COLOURS['overlay'], 2.0)
            case Overlay.Kind.POINT:
                _dot(extras, view, overlay.points[0], COLOURS['overlay'])
    return svg


def emit_svg(chain: DevelopedChain, overlays: Sequence[Overlay], path: Path | str) -> Path:
    """ Write an SVG picture of ``chain``: gluing lines black, strip bands gray, origins red and overlays blue.

    Args:
        chain: The developed chain.
        overlays: Rays, segments and points to draw over the chain.
        path: The file to write.
    Returns: The path written.
    Raises:
        OSError: If ``path`` cannot be written, naming the path.
    """
    path = Path(path)
    svg = build_svg(chain, overlays)
    try:
        ET.ElementTree(svg).write(path, encoding='utf-8', xml_declaration=True)
    except OSError as error:
        raise OSError(f'Cannot write SVG to {path}: {error}') from error
    logger.info(f'Wrote a {len(chain.walls)} wall development to {path}.')
    return path
