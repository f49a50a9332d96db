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

""" Base classes for templatelab reports: a csv backed Frame, and a Report folder of Frames with its meta.json."""

from __future__ import annotations

from templatelab.base.definitions import *
import shutil
import json


class Frame:
    """ Encapsulates a pandas DataFrame backed by a csv file."""

    csv: Path   #: The csv file path, without ``.csv``.

    @property
    def df(self) -> pd.DataFrame:
        return self._df

    @property
    def np(self) -> NP.Matrix:
        return self._df.values

    def write(self, **kwargs: Any) -> Frame:
        """ Write to csv. This is called whenever the data in the Frame changes.

        Args:
            **kwargs: Options passed straight to ``self.to_csv()``.
        Returns: ``self``, for call chaining.
        """
        self._write_options = self._write_options | kwargs
        self._df.to_csv(self.path, **self._write_options)
        return self

    @property
    def path(self) -> Path:
        """ The csv file actually written."""
        return self.csv if self.csv.suffix == '.csv' else self.csv.with_suffix(f'{self.csv.suffix}.csv')

    def __call__(self, *args, **kwargs):
        """ Returns ``self.np``."""
        return self.np

    def __repr__(self) -> str:
        return str(self.csv)

    def __str__(self) -> str:
        return self.csv.name

    def __init__(self, csv: Path | str, data: pd.DataFrame | NP.Array | Iterable | Dict = None, columns: pd.Index | NP.ArrayLike = None,
                 **kwargs):
        """ Construct a Frame, from csv or data. If ``data is None``, the Frame is read from csv. Otherwise the Frame is written to csv.

        Args:
            csv: The csv file path, without ``.csv``.
            data: The data to store. If None, a pd.DataFrame is read from csv.
            columns: See `pd.DataFrame <https://pandas.pydata.org/docs/reference/api/pandas.DataFrame.html>`_.
            **kwargs: Passed straight to `pd.read_csv <https://pandas.pydata.org/pandas-docs/stable/generated/pandas.read_csv.html>`_
                or `DataFrame.to_csv <https://pandas.pydata.org/docs/reference/api/pandas.DataFrame.to_csv.html>`_.
        """
        self.csv = Path(csv)
        self._write_options = {'index': False, 'lineterminator': '\n'}
        if data is None:
            self._df = pd.read_csv(self.path, **kwargs)
        else:
            self._df = pd.DataFrame(data, columns=columns)
            self.write(**kwargs)


class Report:
    """ A folder holding the ``meta.json`` of an experiment and its named Frames."""

    @property
    def folder(self) -> Path:
        return self._folder

    @property
    def meta(self) -> Dict[str, Any]:
        return self._meta

    def frame(self, name: str, data: pd.DataFrame | NP.Array | Iterable | Dict = None, **kwargs) -> Frame:
        """ The Frame ``name`` in this folder, read from csv if ``data is None``, otherwise written."""
        return Frame(self._folder / name, data, **kwargs)

    def read_meta(self) -> Dict[str, Any]:
        with open(self._meta_json, mode='r') as file:
            return json.load(file)

    def write_meta(self, meta: Dict[str, Any]):
        with open(self._meta_json, mode='w') as file:
            json.dump(meta, file, indent=8)

    @staticmethod
    def empty(folder: Path | str) -> Path:
        """ Returns an empty ``folder``."""
        folder = Path(folder)
        shutil.rmtree(folder, ignore_errors=True)
        folder.mkdir(mode=0o777, parents=True, exist_ok=False)
        return folder

    def __repr__(self) -> str:
        return str(self._folder)

    def __str__(self) -> str:
        return self._folder.name

    def __init__(self, folder: Path | str, meta: Dict[str, Any] | None = None):
        """ Open an existing Report, or start a new one.

        Args:
            folder: The report folder.
            meta: If None, the meta data are read from ``folder/meta.json``. Otherwise ``folder`` is emptied and ``meta`` written.
        """
        self._folder = Path(folder)
        self._meta_json = self._folder / 'meta.json'
        if meta is None:
            self._meta = self.read_meta()
        else:
            self.empty(self._folder)
            self._meta = dict(meta)
            self.write_meta(self._meta)
