# dacopt
# Copyright (C) 2026  dacopt developers

import logging
from typing import Any, Callable, List, Optional, Tuple

from PyQt5.QtCore import QRunnable, QThreadPool

from app.core.settings import Settings, SettingsOptions


class RunWorker(QRunnable):
    """
    One isolated run. Calls `method(*arguments)`, which answers (data, error),
    and stores the pair in its own result slot.
    """

    def __init__(self, worker_id: int, name: str, method: Callable, arguments: tuple, results: list):
        super(RunWorker, self).__init__()
        self.setAutoDelete(False)
        self.__method = method
        self.__arguments = arguments
        self.__results = results
        self.id = worker_id
        self.name = name
        self.closed = False

    def run(self):
        try:
            self.__results[self.id] = self.__method(*self.__arguments)
        except BaseException as error:
            logging.exception("Run %s failed", self.name)
            self.__results[self.id] = (None, f'{type(error).__name__}: {error}')
        finally:
            self.closed = True
            logging.debug("worker # %s (id=%d) is closed", self.name, self.id)


class RunsManager:
    """
    Runs a batch of workers on a QThreadPool and returns their (data, error)
    pairs ordered by worker id, whatever the completion order.
    """

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads or Settings.get_value(SettingsOptions.THREADS)
        self.pool = QThreadPool()
        self.pool.setMaxThreadCount(max(1, self.threads))
        self.workers: List[RunWorker] = []

    def run(self, tasks: List[Tuple[str, Callable, tuple]]) -> List[Tuple[Any, Optional[str]]]:
        results: List[Tuple[Any, Optional[str]]] = [(None, 'not started')] * len(tasks)
        self.workers = [RunWorker(index, name, method, arguments, results)
                        for index, (name, method, arguments) in enumerate(tasks)]

        if self.threads <= 1:
            for worker in self.workers:
                worker.run()
            return results

        for worker in self.workers:
            self.pool.start(worker)
        self.pool.waitForDone()
        return results
