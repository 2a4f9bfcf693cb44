# dacopt
# Copyright (C) 2026  dacopt developers

import os
import threading

from PyQt5.QtCore import QSettings

from app.core.errors import UsageError
from app.helpers.singleton import Singleton


class SettingsOptions:
    THREADS = 'threads'
    ORACLE_CAP = 'oracle_cap'
    LOWER_BOUND = 'lower_bound'
    UPPER_BOUND = 'upper_bound'
    SHIFT_LOW = 'shift_low'
    SHIFT_HIGH = 'shift_high'
    SIGMA_INIT = 'sigma_init'
    SIGMA_MIN = 'sigma_min'
    SIGMA_MAX = 'sigma_max'
    INTERACTION_MARGIN = 'interaction_margin'
    HANDSHAKE_TIMEOUT = 'handshake_timeout'
    EVAL_TIMEOUT = 'eval_timeout'
    LOG_LEVEL = 'log_level'


DEFAULTS = (
    (SettingsOptions.THREADS, 0),  # 0 means "number of logical processors"
    (SettingsOptions.ORACLE_CAP, 1000000),
    (SettingsOptions.LOWER_BOUND, -100.0),
    (SettingsOptions.UPPER_BOUND, 100.0),
    (SettingsOptions.SHIFT_LOW, -80.0),
    (SettingsOptions.SHIFT_HIGH, 80.0),
    (SettingsOptions.SIGMA_INIT, 1.0),
    (SettingsOptions.SIGMA_MIN, 1e-12),
    (SettingsOptions.SIGMA_MAX, 1e4),
    (SettingsOptions.INTERACTION_MARGIN, 1e-12),
    (SettingsOptions.HANDSHAKE_TIMEOUT, 10.0),
    (SettingsOptions.EVAL_TIMEOUT, 60.0),
    (SettingsOptions.LOG_LEVEL, 'WARNING'),
)

INTEGER_KEYS = (SettingsOptions.THREADS, SettingsOptions.ORACLE_CAP)
STRING_KEYS = (SettingsOptions.LOG_LEVEL,)

THREADS_ENV = 'DACOPT_THREADS'
SETTINGS_DIR_ENV = 'DACOPT_SETTINGS_DIR'


class Settings(metaclass=Singleton):
    settings_ = None
    lock_ = threading.RLock()

    @classmethod
    def initialize(cls):
        with cls.lock_:
            return cls.__initialize()

    @classmethod
    def __initialize(cls):
        if cls.settings_ is not None:
            return True

        settings_dir = os.environ.get(SETTINGS_DIR_ENV)
        if settings_dir:
            os.makedirs(settings_dir, exist_ok=True)
            cls.settings_ = QSettings(os.path.join(settings_dir, 'dacopt.ini'), QSettings.IniFormat)
        else:
            cls.settings_ = QSettings('dacopt', 'dacopt')

        for key, default in DEFAULTS:
            if not cls.settings_.contains(key):
                cls.settings_.setValue(key, default)
        return True

    @classmethod
    def reset(cls):
        cls.settings_ = None

    @classmethod
    def set_value(cls, key, value):
        with cls.lock_:
            cls.initialize()
            cls.settings_.setValue(key, value)

    @classmethod
    def get_value(cls, key):
        with cls.lock_:
            cls.initialize()
            raw_value = cls.settings_.value(key)
        if key == SettingsOptions.THREADS:
            env_value = os.environ.get(THREADS_ENV)
            threads = int(env_value) if env_value else int(raw_value)
            return threads if threads > 0 else (os.cpu_count() or 1)
        if key in INTEGER_KEYS:
            return int(float(raw_value))
        if key in STRING_KEYS:
            return str(raw_value)
        return float(raw_value)


def read_config_file(path: str) -> dict:
    """
    Reads a flat `key = value` experiment file.
    Values are returned as strings; list-looking values are joined back with commas.
    """
    if not os.path.isfile(path):
        raise UsageError(f"Config file '{path}' not found")

    config = QSettings(path, QSettings.IniFormat)
    if config.status() != QSettings.NoError:
        raise UsageError(f"Config file '{path}' could not be parsed")

    values = {}
    for key in config.allKeys():
        raw_value = config.value(key)
        if isinstance(raw_value, (list, tuple)):
            raw_value = ','.join(str(item).strip() for item in raw_value)
        values[key.split('/')[-1]] = str(raw_value).strip()
    return values
