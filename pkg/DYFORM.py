from pathlib import Path
import sys
import json
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional
import pandas as pd # type: ignore
import argparse

# Import DYFORM utility functions
sys.path.append(str(Path(__file__).resolve().parent))

# Config and logging utilities
from utils.configHandling_utils.config_utils import ConfigManager, RunConfig # type: ignore
from utils.configHandling_utils.logging_utils import setup_logger, get_function_logger, log_configuration, log_exception # type: ignore

# Arithmetic and matrix utilities
from utils.arithmetic_utils.gf2_utils import FieldSpec, log, make_field, parse_elem, parse_modulus # type: ignore
from utils.arithmetic_utils.dring_utils import make_ring # type: ignore
from utils.matrixGroup_utils.matrix_utils import Mat, mat_from_json # type: ignore
from utils.matrixGroup_utils.matgrp_utils import GL, SP, make_g, make_h # type: ignore

# Character sums and conductor arithmetic
from utils.characterSum_utils.kloosterman_utils import kloosterman, kloosterman_fast # type: ignore
from utils.characterSum_utils.character_utils import ( # type: ignore
    CharParams, alpha_of, beta_of, char_sp, endoscopy_grid, twisted_char
)
from utils.conductor_utils.conductor_utils import conductor_summary, conductor_table # type: ignore

# Verification and reporting utilities
from utils.verification_utils.parallel_utils import SuiteRunner # type: ignore
from utils.report_utils.reporting_utils import CheckRecord, VerificationReporter # type: ignore

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# brute force stays cheap below this many summands
BRUTE_FORCE_LIMIT = 10 ** 6


class DYFORM:

    """
    DYFORM: verification workflow for simple supercuspidal characters of Sp_2n and
    their twisted endoscopic lift to GL_{2n+1} over an unramified dyadic field.

    Runs the selected verification suites over GF(2^f) and GR(2^m, f), collects
    their check records and writes the JSON report (and optionally a CSV table).

    Attributes:
        config (RunConfig): effective settings (defaults < YAML file < overrides)
        logger (logging.Logger): general run logger
        field (FieldSpec): residue field of the run
        runner (SuiteRunner): executes the suites
        reporter (VerificationReporter): assembles and writes the report
    """
    def __init__(self, config: Optional[str | Path] = None, overrides: Optional[Dict[str, Any]] = None):
        """
        Initialize the DYFORM run.

        Args:
            config (str | Path, optional): YAML configuration file
            overrides (dict, optional): RunConfig attributes set from the command line

        Raises:
            ValueError: on an invalid configuration or field modulus
        """
        self.config_manager = ConfigManager(config)
        self.config = RunConfig.from_sources(self.config_manager, overrides)
        self.field = make_field(self.config.f, parse_modulus(self.config.modulus))
        self.log_dir = Path(self.config.log_dir)
        self.setup_logging()

        # Log configuration file using the original config path
        if config is not None:
            self.config_log_file = log_configuration(config, self.log_dir, 'dyform')

        self.runner = SuiteRunner(self.config, self.logger)
        self.reporter = VerificationReporter(self.config, self.logger)
        self.records: List[CheckRecord] = []
        self.report: Dict[str, Any] = {}

    def setup_logging(self):
        self.log_dir.mkdir(parents=True, exist_ok=True)
        current_time = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_file = self.log_dir / f'dyform_general_{current_time}.log'
        self.logger = setup_logger('dyform_general', log_file)

    def run_workflow(self) -> int:
        self.logger.info("Starting DYFORM verification")
        self.logger.info(f"Settings: {self.config.echo()}")

        workflow_steps = [
            self.run_suites,
            self.assemble_report,
            self.export_results,
        ]

        for step_func in workflow_steps:
            step_name = step_func.__name__
            self.logger.info(f"Running step: {step_name}")
            try:
                step_func()
            except Exception as e:
                self.logger.error(f"Error during {step_name}: {str(e)}")
                raise

        summary = self.report['summary']
        self.logger.info(f"DYFORM verification completed: {summary}")
        return EXIT_FAIL if summary['fail'] else EXIT_PASS

    @get_function_logger
    def run_suites(self):
        self.records = self.runner.run()
        return self.records

    @get_function_logger
    def assemble_report(self):
        self.report = self.reporter.build_report(self.records, self.field.describe())
        return self.report

    @get_function_logger
    def export_results(self):
        self.reporter.write_json(self.report)
        self.reporter.write_csv(self.records)


def _print_json(data: Dict[str, Any]) -> None:
    print(json.dumps(data))


def _query_field(args) -> FieldSpec:
    return make_field(args.f, parse_modulus(getattr(args, 'modulus', None)))


def run_kl(args) -> int:
    field = _query_field(args)
    x = parse_elem(args.x, field)
    if field.order ** max(args.big_n - 1, 0) <= BRUTE_FORCE_LIMIT:
        value = kloosterman(args.big_n, x, field)
    else:
        value = kloosterman_fast(args.big_n, x, field)
    print(value)
    return EXIT_PASS


def _query_matrix(args, field: FieldSpec, group: str) -> tuple[Mat, int]:
    ring = make_ring(field, args.m)
    if args.matrix:
        with open(args.matrix, 'r') as f:
            data = json.load(f)
        x = mat_from_json(data, ring).tagged(group)
        n = x.n_dim // 2
        return x, n
    if args.n is None or args.u is None:
        raise ValueError("Supply either --matrix FILE or both --n and --u")
    u = parse_elem(args.u, field)
    x = make_h(args.n, u, ring) if group == SP else make_g(args.n, u, ring)
    return x, args.n


def run_char(args, group: str) -> int:
    field = _query_field(args)
    x, n = _query_matrix(args, field, group)
    params = CharParams(n, parse_elem(args.a, field), field)
    if group == SP:
        value, argument = char_sp(x, params), beta_of(x, params)
    else:
        value, argument = twisted_char(x, params), alpha_of(x, params)
    _print_json({
        'group': 'Sp' if group == SP else 'GL',
        'n': n,
        'torus_sum': value,
        'argument': str(argument),
        'argument_log': log(argument),
        'kloosterman': kloosterman_fast(n + 1, argument, field),
    })
    return EXIT_PASS


def run_endoscopy(args) -> int:
    field = _query_field(args)
    results = endoscopy_grid(args.n_max, field, args.m)
    df = pd.DataFrame([{'n': r.n, 'u': str(r.u), 'a': str(r.a), 'value': r.twisted_value,
                        'norm_ok': r.norm_ok, 'holds': r.holds} for r in results],
                      columns=['n', 'u', 'a', 'value', 'norm_ok', 'holds'])
    df.to_csv(sys.stdout, index=False)
    return EXIT_PASS if df['holds'].all() else EXIT_FAIL


def run_conductor(args) -> int:
    if args.table:
        conductor_table(range(1, args.n + 1), args.q).to_csv(sys.stdout, index=False)
    else:
        _print_json(conductor_summary(args.n, args.q))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='dyform',
                                     description='Verify simple supercuspidal character identities over dyadic fields')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='Run the verification suites and write the JSON report')
    verify.add_argument('--config', type=str, help='YAML configuration file')
    verify.add_argument('--suite', type=str, help="Comma-separated suites or 'all'")
    verify.add_argument('--f', type=int, help='Residue degree f, q = 2^f')
    verify.add_argument('--modulus', type=str, help='Field modulus as a bit string, e.g. 0b111')
    verify.add_argument('--m', type=int, help='Precision m of O/p^m')
    verify.add_argument('--n-max', type=int, dest='n_max', help='Largest rank n')
    verify.add_argument('--samples', type=int, help='Random samples per matrix check')
    verify.add_argument('--charsum-samples', type=int, dest='charsum_samples', help='Random samples per character check')
    verify.add_argument('--seed', type=int, help='64-bit seed')
    verify.add_argument('--out', type=str, help='JSON report path')
    verify.add_argument('--csv', type=str, help='Optional CSV table of checks')
    verify.add_argument('--workers', type=int, help='Worker processes')
    verify.add_argument('--negative-control', action='store_true', default=None, dest='negative_control',
                        help='Add a deliberately failing check')
    verify.add_argument('--progress', action='store_true', default=None, dest='show_progress',
                        help='Show progress bars')

    kl = sub.add_parser('kl', help='Print the Kloosterman sum Kl^N_x')
    kl.add_argument('--f', type=int, required=True)
    kl.add_argument('--modulus', type=str)
    kl.add_argument('--big-n', type=int, required=True, dest='big_n')
    kl.add_argument('--x', type=str, required=True, help='0, 1, g^k or 0b<bits>')

    for name, help_text in (('char', 'Character of the Sp_2n simple supercuspidal'),
                            ('twisted', 'Theta-twisted character on GL_{2n+1}')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--matrix', type=str, help='Matrix-input JSON file')
        p.add_argument('--n', type=int)
        p.add_argument('--u', type=str)
        p.add_argument('--a', type=str, required=True)
        p.add_argument('--f', type=int, required=True)
        p.add_argument('--modulus', type=str)
        p.add_argument('--m', type=int, default=4)

    endo = sub.add_parser('endoscopy', help='Print the (g_u, h_u) endoscopy grid as CSV')
    endo.add_argument('--n-max', type=int, required=True, dest='n_max')
    endo.add_argument('--f', type=int, required=True)
    endo.add_argument('--modulus', type=str)
    endo.add_argument('--m', type=int, default=4)

    cond = sub.add_parser('conductor', help='Print conductor and gamma-factor invariants')
    cond.add_argument('--n', type=int, required=True)
    cond.add_argument('--q', type=int, required=True)
    cond.add_argument('--table', action='store_true', help='CSV table for ranks 1..n')
    return parser


VERIFY_OVERRIDES = ['f', 'modulus', 'm', 'n_max', 'samples', 'charsum_samples', 'seed', 'out', 'csv',
                    'workers', 'negative_control', 'show_progress']


def run_verify(args) -> int:
    overrides = {key: getattr(args, key) for key in VERIFY_OVERRIDES}
    overrides['suites'] = args.suite
    try:
        dyform = DYFORM(args.config, overrides)
    except ValueError as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return dyform.run_workflow()
    except Exception as e:
        log_exception(dyform.logger, e)
        print(f"Error running DYFORM: {str(e)}", file=sys.stderr)
        return EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == 'verify':
        return run_verify(args)

    handlers = {
        'kl': run_kl,
        'char': lambda a: run_char(a, SP),
        'twisted': lambda a: run_char(a, GL),
        'endoscopy': run_endoscopy,
        'conductor': run_conductor,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        log_exception(logging.getLogger('dyform'), e)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
