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

""" **Context managers** """

from __future__ import annotations

from templatelab.base.definitions import *
from time import time
from datetime import timedelta
from contextlib import contextmanager

logger = logging.getLogger('templatelab')


@contextmanager
def Timer(name: str = '', is_inline: bool = True):
    """ Context Manager for timing operations, logged at INFO so that stdout stays clean.

    Args:
        name: The name of this context, logged as what is being timed. The (default) empty string will not be timed.
        is_inline: Whether to report timing in one line on exit (the default), or in two, on entry and exit.
    """
    _enter = time()
    if name != '' and not is_inline:
        logger.info(f'Running {name}...')
    yield
    if name != '':
        _exit = time()
        if is_inline:
            logger.info(f'Running {name} took {timedelta(seconds=int(_exit - _enter))}.')
        else:
            logger.info(f'...took {timedelta(seconds=int(_exit - _enter))}.')
