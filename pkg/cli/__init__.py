from .app import build_parser, run
from .command import Command, parse_checkpoints, parse_mu
from .verify import AcceptanceRunner, CheckResult, run_verification
