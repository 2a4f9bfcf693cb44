# dacopt
# Copyright (C) 2026  dacopt developers

import math
from typing import List, Optional, Tuple

from app.core.errors import ProtocolError, UsageError


def format_value(value: Optional[float]) -> str:
    """Shortest decimal that round-trips to the same float"""
    if value is None:
        return ''
    return repr(float(value))


def format_values(values) -> str:
    return ' '.join(repr(float(value)) for value in values)


# Converter to worker dimension
# worker reply: READY <dimension>
def convert_to_ready(line: str) -> int:
    fields = line.split()
    if len(fields) != 2 or fields[0] != 'READY' or not fields[1].isdigit():
        raise ProtocolError(f"Expected 'READY <dimension>', got {line!r}")
    return int(fields[1])


# Converter to objective value
# worker reply: RESULT <id> <value>
def convert_to_result(line: str, request_id: int) -> float:
    fields = line.split()
    if len(fields) != 3 or fields[0] != 'RESULT':
        raise ProtocolError(f"Expected 'RESULT <id> <value>', got {line!r}")
    if fields[1] != str(request_id):
        raise ProtocolError(f"Response id {fields[1]} does not match request id {request_id}")
    try:
        value = float(fields[2])
    except ValueError as error:
        raise ProtocolError(f"Unparsable value {fields[2]!r}") from error
    if math.isnan(value):
        raise ProtocolError("Worker returned NaN")
    return value


# Converter to evaluation request
# harness request: EVAL <id> <v1> ... <vD>
def convert_to_request(line: str) -> Tuple[str, List[float]]:
    fields = line.split()
    if len(fields) < 2 or fields[0] != 'EVAL':
        raise ProtocolError(f"Expected 'EVAL <id> <values...>', got {line!r}")
    return fields[1], [float(field) for field in fields[2:]]


# Converter to trace points
# file: run,fe,best_value
def convert_to_trace_points(text: str) -> List[Tuple[int, int, float]]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != 'run,fe,best_value':
        raise UsageError("Trace file must start with the header 'run,fe,best_value'")

    points = []
    for number, line in enumerate(lines[1:], start=2):
        fields = line.split(',')
        if len(fields) != 3:
            raise UsageError(f"Trace line {number} has {len(fields)} fields, expected 3")
        try:
            points.append((int(fields[0]), int(fields[1]), float(fields[2])))
        except ValueError as error:
            raise UsageError(f"Trace line {number} is malformed: {line!r}") from error
    return points
