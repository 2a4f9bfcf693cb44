# dacopt
# Copyright (C) 2026  dacopt developers

import platform
import sys

import numpy as np

from app.core.rng import GENERATOR_ALGORITHM
from app.helpers.singleton import Singleton


class Application(metaclass=Singleton):
    __version__ = '1.0.0'
    __author__ = 'dacopt developers'

    def __init__(self, verbose: bool = False):
        if not verbose:
            return
        print('─────────────────────────────────', file=sys.stderr)
        print(f'dacopt v{self.__version__}', file=sys.stderr)
        print('─────────────────────────────────', file=sys.stderr)
        print(f'Platform {platform.platform()}', file=sys.stderr)
        print(f'numpy {np.__version__}, generator {GENERATOR_ALGORITHM}', file=sys.stderr)
