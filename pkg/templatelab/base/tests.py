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

""" Contains tests of the base package."""

from __future__ import annotations

import json
import pandas as pd
import pytest

from templatelab.base.classes import Frame, Report


def test_frame_round_trip(tmp_path):
    frame = Frame(tmp_path / 'table', pd.DataFrame({'depth': [2, 3], 'theta_hi': [0.5, 0.25]}))
    assert frame.path == tmp_path / 'table.csv'
    assert (tmp_path / 'table.csv').read_text(encoding='utf-8').splitlines() == ['depth,theta_hi', '2,0.5', '3,0.25']
    assert Frame(tmp_path / 'table').np.tolist() == [[2.0, 0.5], [3.0, 0.25]]


def test_report_writes_meta(tmp_path):
    report = Report(tmp_path / 'experiment', {'seed': 3, 'r': 0.1})
    assert json.loads((tmp_path / 'experiment' / 'meta.json').read_text(encoding='utf-8')) == {'seed': 3, 'r': 0.1}
    report.frame('rows', pd.DataFrame({'k': [5, 6]}))
    reopened = Report(tmp_path / 'experiment')
    assert reopened.meta == {'seed': 3, 'r': 0.1}
    assert reopened.frame('rows').df['k'].tolist() == [5, 6]
    assert (str(reopened), repr(reopened)) == ('experiment', str(tmp_path / 'experiment'))


def test_report_empties_folder(tmp_path):
    Report(tmp_path / 'experiment', {}).frame('stale', pd.DataFrame({'x': [1]}))
    Report(tmp_path / 'experiment', {'fresh': True})
    assert sorted(path.name for path in (tmp_path / 'experiment').iterdir()) == ['meta.json']


def test_report_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        Report(tmp_path / 'absent')
