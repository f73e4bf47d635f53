import argparse
import logging
import sys
from typing import List, Optional

import numpy as np
import pandas as pd

from photon_graviton import config
from photon_graviton.cli import commands, oracle
from photon_graviton.cli.scenario import load_scenario, write_records
from photon_graviton.errors import (ConfigurationError, ConvergenceError, DomainError, ModeLookupError, NumericError,
                                    PreconditionError, ResourceError)

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2
EXIT_ORACLE_FAILURE = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None, help="flat `key = value` scenario file")
    common.add_argument('--out', type=str, default=None, help="output CSV path (default: standard output)")
    common.add_argument('--n-max', dest='n_max', type=int, default=None, help="per-mode occupation cutoff")
    common.add_argument('--oracle', action='store_true', default=None,
                        help="cross-check analytic probabilities on the truncated Fock space")
    common.add_argument('--format', choices=['csv'], default='csv')

    parser = argparse.ArgumentParser(prog='photon-graviton',
                                     description="Photon-graviton conversion in a static magnetic field")
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('convert', parents=[common], help="conversion probability of one scenario")

    scan = subparsers.add_parser('scan', parents=[common], help="conversion probability along a parameter axis")
    scan.add_argument('--axis', required=True, choices=list(commands.SCAN_AXES))
    scan.add_argument('--min', dest='minimum', type=float, required=True)
    scan.add_argument('--max', dest='maximum', type=float, required=True)
    scan.add_argument('--steps', type=int, default=11)
    scan.add_argument('--scale', choices=['linear', 'log'], default='linear')
    scan.add_argument('--workers', type=int, default=1)

    entangle = subparsers.add_parser('entangle', parents=[common], help="entanglement swapping or generation")
    entangle.add_argument('--scenario', choices=list(commands.SCENARIOS), default='swap')
    entangle.add_argument('--strength', type=float, default=np.pi / 2, help="lambda*t, full swap at pi/2")

    # the suites fix their own cutoffs, scenario flags do not apply
    check = subparsers.add_parser('oracle-check', help="run the acceptance suites")
    check.add_argument('--suite', choices=list(oracle.SUITES) + ['all'], default='all')
    check.add_argument('--out', type=str, default=None, help="output CSV path (default: standard output)")
    check.add_argument('--format', choices=['csv'], default='csv')
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == 'oracle-check':
        suites = list(oracle.SUITES) if args.suite == 'all' else [args.suite]
        checks = oracle.cmd_oracle_check(suites)
        report = pd.DataFrame([{'suite': c.suite, 'check': c.name, 'value': c.value, 'tolerance': c.tolerance,
                                'passed': c.passed} for c in checks])
        report.to_csv(args.out if args.out else sys.stdout, index=False, float_format=config.FLOAT_FORMAT,
                      lineterminator='\n')
        return EXIT_OK if all(c.passed for c in checks) else EXIT_ORACLE_FAILURE

    scenario = load_scenario(args.config, n_max=args.n_max, oracle=args.oracle)

    if args.command == 'convert':
        records = [commands.cmd_convert(scenario)]
    elif args.command == 'scan':
        axis = commands.ScanAxis(parameter=args.axis, minimum=args.minimum, maximum=args.maximum,
                                 steps=args.steps, scale=args.scale)
        records = commands.cmd_scan(scenario, axis, workers=args.workers)
    elif args.command == 'entangle':
        records = [commands.cmd_entangle(scenario, name=args.scenario, strength=args.strength)]
    else:
        raise NotImplementedError(f"command={args.command} not handled!")

    write_records(records, args.out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.info(f"Running `{args.command}` ...")
    try:
        status = run(args)
    except (ConvergenceError, ResourceError, NumericError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_NUMERIC
    except (ConfigurationError, DomainError, PreconditionError, ModeLookupError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_VALIDATION
    logger.info(f"`{args.command}` finished with exit status {status}")
    return status


if __name__ == '__main__':
    sys.exit(main())
