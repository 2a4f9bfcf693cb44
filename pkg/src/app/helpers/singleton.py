# dacopt
# Copyright (C) 2026  dacopt developers

import threading


class Singleton(type):
    """Metaclass keeping one instance per class; safe when runs start from pool threads"""
    _instances = {}
    _lock = threading.Lock()

    def __call__(cls, *args, **kwargs):
        with Singleton._lock:
            if cls not in cls._instances:
                cls._instances[cls] = super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]
