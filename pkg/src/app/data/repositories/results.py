# dacopt
# Copyright (C) 2026  dacopt developers

import os
from typing import Iterable, List, Optional, Tuple

import numpy as np

from app.data.models import ConvergenceTrace, ExperimentConfig, RunRecord, SummaryRow, SummaryTable
from app.helpers.converters import convert_to_trace_points, format_value
from app.helpers.tools import read_string_from_file, write_string_to_file

TRACE_HEADER = 'run,fe,best_value'
SUMMARY_HEADER = 'algo,function,D,m,N,M,budget,runs,mean,std'
RUNS_HEADER = 'algo,run,seed,status,final_value,fes,wall_time,trace,error'


class ResultsRepository:
    @classmethod
    def trace_path(cls, output: str, algorithm: str, run_index: int) -> str:
        return os.path.join(output, f'{algorithm}_run{run_index:03d}.csv')

    @classmethod
    def write_trace_csv(cls, trace: ConvergenceTrace, path: str, run_index: int = 0) -> str:
        lines = [TRACE_HEADER]
        lines += [f'{run_index},{fe},{format_value(value)}' for fe, value in trace]
        write_string_to_file(path, '\n'.join(lines) + '\n')
        return path

    @classmethod
    def read_trace_csv(cls, path: str, run_index: Optional[int] = None) -> ConvergenceTrace:
        points = convert_to_trace_points(read_string_from_file(path))
        trace = ConvergenceTrace()
        trace.points = [(fe, value) for run, fe, value in points if run_index is None or run == run_index]
        if trace.points:
            trace.consumed = trace.points[-1][0]
            trace.best_value = trace.points[-1][1]
        return trace

    @classmethod
    def write_summary(cls, table: SummaryTable, path: str) -> str:
        lines = [SUMMARY_HEADER]
        for row in table.rows:
            fields = [
                row.algorithm.value, row.function_id, row.dimension, row.group_size, row.population_size,
                row.groups, row.budget, row.runs, format_value(row.mean), format_value(row.std),
            ]
            lines.append(','.join(str(field) for field in fields))
        write_string_to_file(path, '\n'.join(lines) + '\n')
        return path

    @classmethod
    def write_runs(cls, records: Iterable[RunRecord], path: str) -> str:
        lines = [RUNS_HEADER]
        for record in records:
            error = (record.error or '').replace('\n', ' ').replace(',', ';')
            fields = [
                record.algorithm.value, record.run_index, record.seed, record.status,
                format_value(record.final_value), record.consumed, f'{record.wall_time:.3f}',
                record.trace_path or '', error,
            ]
            lines.append(','.join(str(field) for field in fields))
        write_string_to_file(path, '\n'.join(lines) + '\n')
        return path


def mean_and_std(finals: List[float]) -> Tuple[Optional[float], Optional[float]]:
    """Mean and unbiased (R-1) standard deviation; std is absent below two values"""
    if not finals:
        return None, None
    values = np.asarray(finals, dtype=float)
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if len(values) >= 2 else None
    return mean, std


def summarize(cfg: ExperimentConfig, records: List[RunRecord]) -> SummaryTable:
    table = SummaryTable()
    for algorithm in cfg.algorithms:
        finals = [record.final_value for record in records
                  if record.algorithm == algorithm and record.status == 'ok' and record.final_value is not None]
        mean, std = mean_and_std(finals)
        table.rows.append(SummaryRow(
            algorithm=algorithm,
            function_id=cfg.function_id,
            dimension=cfg.dimension,
            group_size=cfg.group_size,
            population_size=cfg.population_size,
            groups=cfg.groups,
            budget=cfg.budget,
            runs=cfg.runs,
            mean=mean,
            std=std,
        ))
    return table
