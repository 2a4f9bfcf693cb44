# dacopt
# Copyright (C) 2026  dacopt developers
#
# Misbehaving external objective worker.
# Usage: python faulty_worker.py <garbage|crash|silent|wrong-id|nan|no-ready> <dimension>

import sys


def main(mode: str, dimension: int) -> int:
    for line in sys.stdin:
        fields = line.split()
        if not fields:
            continue
        if fields[0] == 'HELLO':
            if mode == 'no-ready':
                print('HELLO yourself', flush=True)
                continue
            print(f'READY {dimension}', flush=True)
        elif fields[0] == 'EVAL':
            if mode == 'garbage':
                print('garbage', flush=True)
            elif mode == 'crash':
                return 3
            elif mode == 'wrong-id':
                print(f'RESULT {int(fields[1]) + 1} 0.0', flush=True)
            elif mode == 'nan':
                print(f'RESULT {fields[1]} nan', flush=True)
            # silent: never answers
        elif fields[0] == 'BYE':
            return 0
    return 0


if __name__ == '__main__':
    sys.exit(main(sys.argv[1], int(sys.argv[2])))
