# dacopt
# Copyright (C) 2026  dacopt developers

import logging
import os
import time
from typing import List, Optional, Tuple

from app.algorithms.baselines import run_grid_search
from app.algorithms.dachc import run_dachc, run_phc
from app.algorithms.framework import run_dac
from app.core.errors import DacOptError
from app.core.managers import RunsManager
from app.core.rng import RngStream, derive_seed
from app.core.settings import Settings, SettingsOptions
from app.data.models import Algorithm, DacConfig, ExperimentConfig, ExternalObjectiveConfig, ProblemSpec, \
    RunRecord, SummaryTable
from app.data.repositories.benchmarks import BenchmarkInstance, BenchmarkRepository, FunctionId
from app.data.repositories.results import ResultsRepository, summarize
from app.services.worker_helper import ExternalObjective, split_command


def build_instance(cfg: ExperimentConfig) -> Optional[BenchmarkInstance]:
    if cfg.external:
        return None
    return BenchmarkRepository.make_instance(FunctionId.parse(cfg.function_id), cfg.dimension, cfg.group_size,
                                             cfg.base_seed, bounds=(cfg.lower, cfg.upper))


def dac_config(cfg: ExperimentConfig, seed: int) -> DacConfig:
    return DacConfig(
        population_size=cfg.population_size,
        groups=cfg.groups,
        budget=cfg.budget,
        direction=cfg.direction,
        seed=seed,
        log_every=cfg.log_every,
        sigma_init=cfg.sigma_init,
    )


def optimize(algorithm: Algorithm, f, spec: ProblemSpec, cfg: ExperimentConfig, seed: int):
    run_cfg = dac_config(cfg, seed)
    rng = RngStream(seed)
    if algorithm == Algorithm.DAC_HC:
        return run_dachc(f, spec, run_cfg, rng)
    if algorithm == Algorithm.PHC:
        return run_phc(f, spec, run_cfg, rng)
    if algorithm == Algorithm.DAC_GENERIC:
        return run_dac(f, spec, run_cfg, rng=rng)
    return run_grid_search(f, spec, run_cfg, cfg.grid_points)


def execute_run(cfg: ExperimentConfig, algorithm: Algorithm, run_index: int,
                instance: Optional[BenchmarkInstance]) -> Tuple[RunRecord, Optional[str]]:
    seed = derive_seed(cfg.base_seed, 'run', run_index)
    record = RunRecord(algorithm=algorithm, run_index=run_index, seed=seed)
    spec = ProblemSpec(dimension=cfg.dimension, lower=cfg.lower, upper=cfg.upper, direction=cfg.direction)
    logging.info("%s run %d started (seed %d)", algorithm.value, run_index, seed)

    started = time.perf_counter()
    try:
        if instance is not None:
            best, trace = optimize(algorithm, instance, spec, cfg, seed)
        else:
            external = ExternalObjectiveConfig(
                command=split_command(cfg.external),
                dimension=cfg.dimension,
                direction=cfg.direction,
                handshake_timeout=Settings.get_value(SettingsOptions.HANDSHAKE_TIMEOUT),
                eval_timeout=cfg.eval_timeout,
            )
            with ExternalObjective(external) as objective:
                best, trace = optimize(algorithm, objective, spec, cfg, seed)

        record.trace_path = ResultsRepository.write_trace_csv(
            trace, ResultsRepository.trace_path(cfg.output, algorithm.value, run_index), run_index)
        record.final_value = best.cached_value if best else None
        record.consumed = trace.consumed
    except (DacOptError, OSError) as error:
        logging.exception("%s run %d failed", algorithm.value, run_index)
        record.status = 'failed'
        record.error = f'{type(error).__name__}: {error}'
    record.wall_time = time.perf_counter() - started

    logging.info("%s run %d finished: %s, best %r after %d FEs", algorithm.value, run_index, record.status,
                 record.final_value, record.consumed)
    return record, record.error


def run_experiment(cfg: ExperimentConfig, threads: Optional[int] = None) -> Tuple[List[RunRecord], SummaryTable]:
    """
    Runs every algorithm `cfg.runs` times on one shared instance. Run r of every
    algorithm uses the same seed, so algorithms are compared pairwise.
    """
    os.makedirs(cfg.output, exist_ok=True)
    instance = build_instance(cfg)
    if cfg.external:
        threads = 1

    tasks = []
    for algorithm in cfg.algorithms:
        for run_index in range(cfg.runs):
            tasks.append((f'{algorithm.value}#{run_index}', execute_run, (cfg, algorithm, run_index, instance)))

    results = RunsManager(threads).run(tasks)

    records = []
    for (name, _, arguments), (record, error) in zip(tasks, results):
        if record is None:
            _, algorithm, run_index, _ = arguments
            record = RunRecord(algorithm=algorithm, run_index=run_index,
                               seed=derive_seed(cfg.base_seed, 'run', run_index), status='failed', error=error)
        records.append(record)

    summary = summarize(cfg, records)
    ResultsRepository.write_summary(summary, os.path.join(cfg.output, 'summary.csv'))
    ResultsRepository.write_runs(records, os.path.join(cfg.output, 'runs.csv'))
    return records, summary
