# dacopt
# Copyright (C) 2026  dacopt developers

import argparse
from typing import Callable, List

import numpy as np

from app.analysis.fitting import loglinear_fit
from app.analysis.interaction import detect_interaction, lemma1_report
from app.analysis.oracles import accurate_complement, ranking_agreement
from app.cli.arguments import parse_config
from app.cli.experiment import run_experiment
from app.core.errors import UsageError
from app.core.rng import RngStream
from app.core.settings import Settings, SettingsOptions
from app.core.solutions import complement_of
from app.data.models import FullSolution, GridSpec, PartialSolution, ProblemSpec
from app.data.repositories.benchmarks import BenchmarkRepository, FunctionId
from app.data.repositories.results import ResultsRepository
from app.helpers.converters import format_value, format_values
from app.objectives.functions import rosenbrock, schwefel12, sphere

RAW_FUNCTIONS = {
    FunctionId.SPHERE: sphere,
    FunctionId.SCHWEFEL12: schwefel12,
    FunctionId.ROSENBROCK: rosenbrock,
}


def parse_floats(text: str, what: str) -> List[float]:
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError as error:
        raise UsageError(f"Invalid number list {text!r} for '{what}'") from error


def objective_for(args: argparse.Namespace) -> Callable:
    function_id = FunctionId.parse(args.fn)
    if args.raw:
        if function_id not in RAW_FUNCTIONS:
            raise UsageError(f"--raw only applies to {', '.join(f.value for f in RAW_FUNCTIONS)}")
        return RAW_FUNCTIONS[function_id]
    return BenchmarkRepository.make_instance(function_id, args.dim, args.m or args.dim, args.seed)


def bounds_spec(dimension: int) -> ProblemSpec:
    return ProblemSpec(dimension=dimension,
                       lower=Settings.get_value(SettingsOptions.LOWER_BOUND),
                       upper=Settings.get_value(SettingsOptions.UPPER_BOUND))


def grid_for(args: argparse.Namespace, axes: int) -> GridSpec:
    points = parse_floats(args.grid, 'grid')
    return GridSpec([points] * axes, cap=Settings.get_value(SettingsOptions.ORACLE_CAP))


def run_command(args: argparse.Namespace) -> int:
    cfg = parse_config(args)
    records, summary = run_experiment(cfg)
    for record in records:
        print(f'{record.algorithm.value} run {record.run_index}: {record.status} '
              f'best={format_value(record.final_value)} fes={record.consumed}')
    for row in summary.rows:
        print(f'{row.algorithm.value}: mean={format_value(row.mean)} std={format_value(row.std)}')
    return 0 if all(record.status == 'ok' for record in records) else 3


def oracle_command(args: argparse.Namespace) -> int:
    if args.oracle == 'lemma1':
        report = lemma1_report(parse_floats(args.probabilities, 'probabilities'), args.d_i)
        print(f'product={format_value(report.product)} mean={format_value(report.mean)} '
              f'bound={format_value(report.bound)}')
        return 0

    f = objective_for(args)
    if args.oracle == 'interaction':
        witness = detect_interaction(f, args.i, args.j, bounds_spec(args.dim), args.trials, RngStream(args.seed))
        if witness is None:
            print(f'no interaction witness for ({args.i}, {args.j}) in {args.trials} trials')
        else:
            print(f'interaction ({args.i}, {args.j}): x_i={witness.x_i!r} x_i\'={witness.x_i_prime!r} '
                  f'x_j={witness.x_j!r} x_j\'={witness.x_j_prime!r} values={format_values(witness.values)}')
        return 0

    if args.oracle == 'accurate-complement':
        pairs = [item.split('=') for item in args.partial.split(',') if item.strip()]
        try:
            partial = PartialSolution([int(i) for i, _ in pairs], [float(v) for _, v in pairs])
        except ValueError as error:
            raise UsageError(f"Invalid partial {args.partial!r}, expected index=value pairs") from error
        complement, value = accurate_complement(f, partial, grid_for(args, args.dim - len(partial)))
        print(f'complement indices={complement.indices.tolist()} values={format_values(complement.values)} '
              f'value={format_value(value)}')
        return 0

    group = [int(i) for i in args.group.split(',') if i.strip()]
    partials = [PartialSolution(group, parse_floats(item, 'partials')) for item in args.partials.split(';')]
    grid = grid_for(args, args.dim - len(group))
    rng = RngStream(args.seed)
    indices = complement_of(group, args.dim)
    rows = []
    for _ in range(args.rows):
        values = np.zeros(args.dim)
        values[indices] = [axis[rng.integers(0, len(axis))] for axis in grid.points]
        rows.append(FullSolution(values))
    print(f'agreement={format_value(ranking_agreement(f, partials, rows, grid))}')
    return 0


def fit_command(args: argparse.Namespace) -> int:
    trace = ResultsRepository.read_trace_csv(args.trace, args.run)
    result = loglinear_fit(trace, args.window)
    print(f'slope={format_value(result.slope)} r_squared={format_value(result.r_squared)} '
          f'points={result.points} degenerate={result.degenerate} truncated={result.truncated}')
    return 0


def bench_info_command(args: argparse.Namespace) -> int:
    instance = BenchmarkRepository.make_instance(FunctionId.parse(args.fn), args.dim, args.m, args.seed)
    value = instance(instance.optimum)
    tolerance = 1e-9 if instance.rosenbrock_coordinates.size else 0.0
    print(f'instance: {instance}')
    print(f'shift: {format_values(instance.shift)}')
    print(f'permutation: {" ".join(str(p) for p in instance.permutation)}')
    print(f'optimum: {format_values(instance.optimum)}')
    print(f'optimum value: {format_value(value)}')
    print(f'certified: {abs(value) <= tolerance}')
    return 0


COMMANDS = {
    'run': run_command,
    'oracle': oracle_command,
    'fit': fit_command,
    'bench-info': bench_info_command,
}
