# dacopt
# Copyright (C) 2026  dacopt developers

import logging
import shlex
from typing import Optional, Union

import numpy as np

from app.core.errors import DimensionMismatch, ProtocolError, WorkerCrashed, WorkerTimeout
from app.data.models import ExternalObjectiveConfig
from app.helpers.converters import convert_to_ready, convert_to_result, format_values
from app.helpers.tools import LineProcess


class Command:
    HELLO = 'HELLO dacopt 1'
    READY = 'READY'
    EVAL = 'EVAL'
    RESULT = 'RESULT'
    BYE = 'BYE'


def split_command(command: Union[str, list]) -> list:
    return shlex.split(command) if isinstance(command, str) else list(command)


class ExternalObjective:
    """
    Black-box objective served by a worker process over stdin/stdout.
    One connection belongs to one run; use as a context manager.
    """

    def __init__(self, config: ExternalObjectiveConfig):
        self.config = config
        self.process: Optional[LineProcess] = None
        self.request_id = 0

    def __enter__(self):
        return self.start()

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()

    def __call__(self, x) -> float:
        return self.evaluate(x)

    @property
    def dimension(self) -> int:
        return self.config.dimension

    def start(self) -> 'ExternalObjective':
        try:
            self.process = LineProcess(split_command(self.config.command))
        except FileNotFoundError as error:
            raise WorkerCrashed(f"Worker command '{self.config.command[0]}' not found") from error

        try:
            self._send(Command.HELLO)
            dimension = convert_to_ready(self._receive(self.config.handshake_timeout, 'handshake'))
        except (ProtocolError, WorkerTimeout, WorkerCrashed):
            self.close()
            raise
        if dimension != self.config.dimension:
            self.close()
            raise ProtocolError(f"Worker announced dimension {dimension}, expected {self.config.dimension}")
        logging.info("External worker %s ready (D=%d)", self.process.name, dimension)
        return self

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.config.dimension,):
            raise DimensionMismatch(f"Expected {self.config.dimension} values, got shape {x.shape}")
        if self.process is None:
            raise WorkerCrashed("Worker not started")

        self.request_id += 1
        self._send(f"{Command.EVAL} {self.request_id} {format_values(x)}")
        line = self._receive(self.config.eval_timeout, f'request {self.request_id}')
        return convert_to_result(line, self.request_id)

    def close(self):
        if self.process is None:
            return
        if self.process.alive:
            self.process.send(Command.BYE)
        exit_code = self.process.close()
        if exit_code:
            logging.warning("External worker %s exited with code %s", self.process.name, exit_code)
        self.process = None

    def _send(self, line: str):
        if not self.process.send(line):
            raise WorkerCrashed(f"Worker exited (code {self.process.exit_code}): {self.process.error_data}")

    def _receive(self, timeout: Optional[float], what: str) -> str:
        line = self.process.receive(timeout)
        if line is None:
            raise WorkerTimeout(f"Worker did not answer {what} within {timeout}s")
        if line is LineProcess.EOF:
            self.process.close(timeout=1.0)
            raise WorkerCrashed(f"Worker closed its output during {what} (code {self.process.exit_code})")
        return line


def external_eval(objective: ExternalObjective, x) -> float:
    return objective.evaluate(x)
