# dacopt
# Copyright (C) 2026  dacopt developers

import argparse
from typing import List, Optional

from app.core.errors import UsageError
from app.core.settings import Settings, SettingsOptions, read_config_file
from app.data.models import Algorithm, Direction, ExperimentConfig
from app.data.repositories.benchmarks import FunctionId, table_blocks


class Parser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


class RunOption:
    # flag -> (dest, converter, default)
    ALGO = ('--algo', 'algo', str, 'dac-hc')
    FN = ('--fn', 'fn', str, 'f1')
    DIM = ('--dim', 'dim', int, 100)
    GROUP_SIZE = ('--m', 'm', int, 10)
    POPULATION = ('--n', 'n', int, 2)
    GROUPS = ('--M', 'M', int, 10)
    BUDGET = ('--budget', 'budget', int, 200000)
    RUNS = ('--runs', 'runs', int, 1)
    SEED = ('--seed', 'seed', int, 0)
    OUT = ('--out', 'out', str, 'results')
    LOG_EVERY = ('--log-every', 'log_every', int, 1)
    LOWER = ('--lower', 'lower', float, -100.0)
    UPPER = ('--upper', 'upper', float, 100.0)
    SIGMA_INIT = ('--sigma-init', 'sigma_init', float, 1.0)
    EXTERNAL = ('--external', 'external', str, None)
    DIRECTION = ('--direction', 'direction', str, 'minimize')
    GRID_POINTS = ('--grid-points', 'grid_points', int, 100)
    EVAL_TIMEOUT = ('--eval-timeout', 'eval_timeout', float, 60.0)

    ALL = (ALGO, FN, DIM, GROUP_SIZE, POPULATION, GROUPS, BUDGET, RUNS, SEED, OUT, LOG_EVERY,
           LOWER, UPPER, SIGMA_INIT, EXTERNAL, DIRECTION, GRID_POINTS, EVAL_TIMEOUT)

    # defaults read from the settings store
    FROM_SETTINGS = {
        'lower': SettingsOptions.LOWER_BOUND,
        'upper': SettingsOptions.UPPER_BOUND,
        'sigma_init': SettingsOptions.SIGMA_INIT,
        'eval_timeout': SettingsOptions.EVAL_TIMEOUT,
    }


def add_run_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='flat key = value file; flags override its values')
    for flag, dest, converter, default in RunOption.ALL:
        # every flag defaults to None so file values can be told apart from flags
        parser.add_argument(flag, dest=dest, default=None, help=f'default: {default}')


def convert(key: str, converter, raw):
    try:
        return converter(raw)
    except (TypeError, ValueError) as error:
        raise UsageError(f"Invalid value {raw!r} for '{key}'") from error


def parse_algorithms(text: str) -> List[Algorithm]:
    algorithms = []
    for name in str(text).split(','):
        name = name.strip().lower()
        for algorithm in Algorithm:
            if algorithm.value == name:
                algorithms.append(algorithm)
                break
        else:
            raise UsageError(f"Unknown algorithm '{name}' for 'algo'")
    return algorithms


def parse_config(args: argparse.Namespace, file_values: Optional[dict] = None) -> ExperimentConfig:
    """Merges defaults, then the config file, then flags into an ExperimentConfig"""
    if file_values is None:
        file_values = read_config_file(args.config) if getattr(args, 'config', None) else {}

    known = {dest for _, dest, _, _ in RunOption.ALL}
    for key in file_values:
        if key not in known:
            raise UsageError(f"Unknown config key '{key}'")

    merged = {}
    for flag, dest, converter, default in RunOption.ALL:
        raw = getattr(args, dest, None)
        if raw is None:
            raw = file_values.get(dest)
        if raw is None and dest in RunOption.FROM_SETTINGS:
            raw = Settings.get_value(RunOption.FROM_SETTINGS[dest])
        merged[dest] = default if raw is None else convert(flag.lstrip('-'), converter, raw)

    if merged['external'] is None:
        merged['fn'] = FunctionId.parse(merged['fn']).value
    try:
        direction = Direction.parse(merged['direction'])
    except ValueError as error:
        raise UsageError(f"Invalid value {merged['direction']!r} for 'direction'") from error
    if direction == Direction.MAXIMIZE and merged['external'] is None:
        raise UsageError("Benchmark functions are minimized; 'maximize' needs an external objective")

    try:
        config = ExperimentConfig(
            algorithms=parse_algorithms(merged['algo']),
            function_id=merged['fn'] if merged['external'] is None else 'external',
            dimension=merged['dim'],
            group_size=merged['m'],
            population_size=merged['n'],
            groups=merged['M'],
            budget=merged['budget'],
            runs=merged['runs'],
            base_seed=merged['seed'],
            output=merged['out'],
            log_every=merged['log_every'],
            lower=merged['lower'],
            upper=merged['upper'],
            sigma_init=merged['sigma_init'],
            external=merged['external'],
            direction=direction,
            grid_points=merged['grid_points'],
            eval_timeout=merged['eval_timeout'],
        )
        # benchmark layout must fit D and m before any run starts
        if config.external is None:
            table_blocks(FunctionId.parse(config.function_id), config.dimension, config.group_size)
    except ValueError as error:
        raise UsageError(str(error)) from error
    return config


def build_parser() -> Parser:
    parser = Parser(prog='dacopt', description='Divide and approximate conquer optimization toolkit',
                    allow_abbrev=False)
    parser.add_argument('-v', '--verbose', action='count', default=0)
    commands = parser.add_subparsers(dest='command', parser_class=Parser)
    commands.required = True

    run = commands.add_parser('run', help='seeded multi-run experiment', allow_abbrev=False)
    add_run_arguments(run)

    oracle = commands.add_parser('oracle', help='ground-truth oracles and diagnostics', allow_abbrev=False)
    oracles = oracle.add_subparsers(dest='oracle', parser_class=Parser)
    oracles.required = True
    for name in ('accurate-complement', 'interaction', 'agreement'):
        sub = oracles.add_parser(name, allow_abbrev=False)
        sub.add_argument('--fn', required=True)
        sub.add_argument('--dim', type=int, required=True)
        sub.add_argument('--m', type=int, default=None)
        sub.add_argument('--seed', type=int, default=0)
        sub.add_argument('--raw', action='store_true', help='plain function, no shift or permutation')
        if name == 'interaction':
            sub.add_argument('--i', type=int, required=True)
            sub.add_argument('--j', type=int, required=True)
            sub.add_argument('--trials', type=int, default=1000)
        else:
            sub.add_argument('--grid', required=True, help='comma separated points used on every remaining axis')
        if name == 'accurate-complement':
            sub.add_argument('--partial', required=True, help='index=value pairs, e.g. 0=2.0')
        if name == 'agreement':
            sub.add_argument('--group', required=True, help='comma separated partial indices')
            sub.add_argument('--partials', required=True, help='partials separated by ";", values by ","')
            sub.add_argument('--rows', type=int, default=1, help='population rows drawn from the grid')
    lemma = oracles.add_parser('lemma1', allow_abbrev=False)
    lemma.add_argument('--probabilities', required=True)
    lemma.add_argument('--d-i', dest='d_i', type=int, default=0)

    fit = commands.add_parser('fit', help='log-linear fit of a trace CSV', allow_abbrev=False)
    fit.add_argument('trace')
    fit.add_argument('--window', type=float, default=0.5)
    fit.add_argument('--run', type=int, default=None)

    info = commands.add_parser('bench-info', help='print a benchmark instance', allow_abbrev=False)
    info.add_argument('--fn', required=True)
    info.add_argument('--dim', type=int, required=True)
    info.add_argument('--m', type=int, default=10)
    info.add_argument('--seed', type=int, default=0)
    return parser
