# dacopt
# Copyright (C) 2026  dacopt developers
#
# Reference worker for the external objective line protocol.
# Usage: python example_worker.py <dimension> [sphere|schwefel12|rosenbrock]

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from app.helpers.converters import convert_to_request  # noqa: E402
from app.objectives.functions import rosenbrock, schwefel12, sphere  # noqa: E402

FUNCTIONS = {'sphere': sphere, 'schwefel12': schwefel12, 'rosenbrock': rosenbrock}


def serve(dimension: int, function, stdin=sys.stdin, stdout=sys.stdout) -> int:
    for line in stdin:
        fields = line.split()
        if not fields:
            continue
        if fields[0] == 'HELLO':
            stdout.write(f"READY {dimension}\n")
        elif fields[0] == 'EVAL':
            request_id, values = convert_to_request(line)
            if len(values) != dimension:
                print(f"expected {dimension} values, got {len(values)}", file=sys.stderr)
                return 1
            stdout.write(f"RESULT {request_id} {function(values)!r}\n")
        elif fields[0] == 'BYE':
            return 0
        stdout.flush()
    return 0


if __name__ == '__main__':
    if len(sys.argv) < 2:
        print("usage: example_worker.py <dimension> [sphere|schwefel12|rosenbrock]", file=sys.stderr)
        sys.exit(2)
    sys.exit(serve(int(sys.argv[1]), FUNCTIONS[sys.argv[2] if len(sys.argv) > 2 else 'sphere']))
