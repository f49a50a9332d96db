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

""" JSON (de)serialization of template and self-similar data.

Floats are written as IEEE-754 doubles in shortest round-trip form, with compact separators, so output is bit-exact.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec
import json

logger = logging.getLogger(__name__)

SEPARATORS = (',', ':')     #: Compact JSON separators.


def to_dict(data: TemplateData | SelfSimilarData) -> Dict[str, Any]:
    if isinstance(data, SelfSimilarData):
        return {'kind': 'self_similar'} | {key: float(value) for key, value in data._asdict().items()}
    return {'kind': data.kind.name.lower(), 'anchor': float(data.anchor),
            'walls': [{'alpha': None if wall.alpha is None else float(wall.alpha)} for wall in data.walls],
            'strips': [{'width': float(strip.width), 'eps': float(strip.eps), 'degenerate_ok': bool(strip.degenerate_ok)} for strip in data.strips]}


def from_dict(content: Dict[str, Any]) -> TemplateData | SelfSimilarData:
    """ Parse a template or self-similar dict.

    Raises:
        ValueError: If the content does not match either schema.
    """
    try:
        kind = content['kind']
        if kind == 'self_similar':
            return SelfSimilarData(*(float(content[key]) for key in SelfSimilarData._fields))
        return TemplateData(TemplateData.Kind[kind.upper()],
                            tuple(WallSpec(None if wall['alpha'] is None else float(wall['alpha'])) for wall in content['walls']),
                            tuple(StripSpec(float(strip['width']), float(strip['eps']), bool(strip.get('degenerate_ok', False)))
                                  for strip in content['strips']),
                            float(content.get('anchor', 0.0)))
    except (KeyError, TypeError, AttributeError) as error:
        raise ValueError(f'Malformed template content: {error!r}.') from error


def dumps(data: TemplateData | SelfSimilarData) -> str:
    return json.dumps(to_dict(data), separators=SEPARATORS, ensure_ascii=False)


def loads(text: str) -> TemplateData | SelfSimilarData:
    try:
        content = json.loads(text)
    except json.JSONDecodeError as error:
        raise ValueError(f'Template is not valid JSON: {error}.') from error
    return from_dict(content)


def write(data: TemplateData | SelfSimilarData, path: Path | str) -> Path:
    """ Write ``data`` to ``path`` as UTF-8 JSON.

    Returns: The path written.
    """
    path = Path(path)
    path.write_text(dumps(data), encoding='utf-8')
    logger.debug(f'Wrote {type(data).__name__} to {path}.')
    return path


def read(path: Path | str) -> TemplateData | SelfSimilarData:
    """ Read template or self-similar data from ``path``.

    Raises:
        OSError: If ``path`` cannot be read.
        ValueError: If its content is malformed.
    """
    path = Path(path)
    try:
        return loads(path.read_text(encoding='utf-8'))
    except ValueError as error:
        raise ValueError(f'{path}: {error}') from error
