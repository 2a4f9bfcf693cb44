# dacopt
# Copyright (C) 2026  dacopt developers

import logging
import os
import queue
import subprocess
import threading
from typing import List, Optional


class LineProcess:
    """
    LineProcess - keeps a subprocess alive and talks to it line by line.
    stdout lines are queued by a reader thread so reads can time out;
    stderr lines are forwarded to logging.debug.

    Keyword arguments:
    arguments -- array list of arguments
    name -- label used in log lines (default first argument)
    """

    EOF = object()

    def __init__(self, arguments: List[str], name: Optional[str] = None):
        self.arguments = arguments
        self.name = name or os.path.basename(arguments[0])
        self.error_data = None
        self.__lines = queue.Queue()
        self.process = subprocess.Popen(
            arguments,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            encoding='utf-8',
            bufsize=1,
        )
        self.__stdout_thread = threading.Thread(target=self.__pump_stdout, daemon=True)
        self.__stderr_thread = threading.Thread(target=self.__pump_stderr, daemon=True)
        self.__stdout_thread.start()
        self.__stderr_thread.start()

    def __pump_stdout(self):
        for line in iter(self.process.stdout.readline, ''):
            self.__lines.put(line.rstrip('\r\n'))
        self.__lines.put(LineProcess.EOF)

    def __pump_stderr(self):
        for line in iter(self.process.stderr.readline, ''):
            logging.debug("%s: %s", self.name, line.rstrip())

    @property
    def alive(self) -> bool:
        return self.process.poll() is None

    @property
    def exit_code(self) -> Optional[int]:
        return self.process.poll()

    def send(self, line: str) -> bool:
        try:
            self.process.stdin.write(line + '\n')
            self.process.stdin.flush()
            return True
        except (BrokenPipeError, OSError, ValueError) as error:
            self.error_data = str(error)
            return False

    def receive(self, timeout: Optional[float] = None):
        """Next stdout line, LineProcess.EOF once the stream closed, or None on timeout"""
        try:
            return self.__lines.get(timeout=timeout)
        except queue.Empty:
            return None

    def close(self, timeout: float = 5.0) -> Optional[int]:
        try:
            if self.process.stdin and not self.process.stdin.closed:
                self.process.stdin.close()
        except (BrokenPipeError, OSError):
            pass
        try:
            return self.process.wait(timeout=timeout)
        except subprocess.TimeoutExpired:
            logging.warning("%s did not exit within %ss, killing it", self.name, timeout)
            self.process.kill()
            return self.process.wait()


def read_string_from_file(path: str) -> str:
    with open(path, encoding='utf-8') as file:
        return file.read()


def write_string_to_file(path: str, text: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as file:
        file.write(text)
