# dacopt
# Copyright (C) 2026  dacopt developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import logging
import sys

from app.cli.arguments import build_parser
from app.cli.commands import COMMANDS
from app.core.application import Application
from app.core.errors import DacOptError, UsageError
from app.core.settings import Settings, SettingsOptions

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as error:
        print(f'dacopt: {error}', file=sys.stderr)
        return EXIT_USAGE

    level = Settings.get_value(SettingsOptions.LOG_LEVEL)
    if args.verbose:
        level = 'INFO' if args.verbose == 1 else 'DEBUG'
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(threadName)s: %(message)s')
    Application(verbose=args.verbose > 0)

    try:
        return COMMANDS[args.command](args)
    except UsageError as error:
        print(f'dacopt: {error}', file=sys.stderr)
        return EXIT_USAGE
    except (DacOptError, OSError) as error:
        logging.error(error)
        print(f'dacopt: {error}', file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
