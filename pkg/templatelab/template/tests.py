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

""" Contains tests of the template package."""

from __future__ import annotations

import math
import pytest

from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec, validate, expand_self_similar, scale
from templatelab.template import storage


def three_walls(alpha: float = math.pi / 2, width: float = 1.0, degenerate_ok: bool = False) -> TemplateData:
    return TemplateData(TemplateData.Kind.FINITE, (WallSpec(None), WallSpec(alpha), WallSpec(None)),
                        (StripSpec(width, 0.0, degenerate_ok), StripSpec(1.0, 0.0)))


def test_validate_passes():
    assert validate(three_walls()) == []


def test_validate_degenerate_angle():
    assert 'alpha out of (0,π) at wall 1' in validate(three_walls(alpha=0.0))


def test_validate_zero_width():
    assert validate(three_walls(width=0.0)) == ['zero width at strip 0']
    assert validate(three_walls(width=0.0, degenerate_ok=True)) == []


def test_validate_counts():
    t = three_walls()
    assert any('strips' in violation for violation in validate(t._replace(strips=t.strips[:1])))


def test_expand_self_similar():
    s = SelfSimilarData(1.2, 1.0, 0.5, 2.0, -1.0)
    t = expand_self_similar(s, 5)
    assert t.widths == (1.0, 2.0, 2.0, 4.0)
    assert t.epss == (0.5, -1.0, 1.0, -2.0)
    assert t.alphas == (None, 1.2, 1.2, 1.2, 1.2)
    assert expand_self_similar(s, 5, 2).widths == (2.0, 4.0, 4.0, 8.0)


def test_expand_rejects_short():
    with pytest.raises(ValueError):
        expand_self_similar(SelfSimilarData(1.0, 1.0, 0.0, 1.0, 0.0), 1)


@pytest.mark.parametrize('k', [0, 1, 2, 5])
def test_self_similarity_identity(k):
    s = SelfSimilarData(0.9, 1.3, -0.7, 0.4, 2.2)
    assert expand_self_similar(s.scaled(2.0), 9, k) == expand_self_similar(s, 9, k + 2)
    assert scale(expand_self_similar(s, 9, k), 2.0) == expand_self_similar(s, 9, k + 2)
    assert validate(expand_self_similar(s, 9, k)) == []


def test_scale():
    t = expand_self_similar(SelfSimilarData(1.0, 1.0, 0.5, 2.0, -1.0), 4)
    assert scale(t, 1.0) == t
    with pytest.raises(ValueError):
        scale(t, 0.0)


def test_json_schema_is_bit_exact():
    t = TemplateData(TemplateData.Kind.HALF, (WallSpec(None), WallSpec(math.pi / 2)), (StripSpec(1.0, 0.5),))
    assert storage.dumps(t) == ('{"kind":"half","anchor":0.0,"walls":[{"alpha":null},{"alpha":1.5707963267948966}],'
                                '"strips":[{"width":1.0,"eps":0.5,"degenerate_ok":false}]}')
    assert storage.loads(storage.dumps(t)) == t
    s = SelfSimilarData(1.2, 1.0, 0.5, 2.0, -1.0)
    assert storage.dumps(s) == '{"kind":"self_similar","beta":1.2,"l0":1.0,"eps0":0.5,"l1":2.0,"eps1":-1.0}'


def test_read_write(tmp_path):
    t = expand_self_similar(SelfSimilarData(0.7, 0.1, 1 / 3, 2.0, -1.0), 6)
    assert storage.read(storage.write(t, tmp_path / 't.json')) == t
    (tmp_path / 'bad.json').write_text('{"kind": "half"}', encoding='utf-8')
    with pytest.raises(ValueError, match='bad.json'):
        storage.read(tmp_path / 'bad.json')
