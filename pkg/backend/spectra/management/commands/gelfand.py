"""
python manage.py gelfand {branch,spectrum,eigenfunction,verify} [options]

Exit status: 0 on success; 1 when ``verify`` finds a failing check, when the
lambda' column of ``branch`` disagrees with the turning point, or when a
numerical routine fails; 2 for an invalid configuration or argument.
"""

import argparse
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from spectra.exceptions import GelfandError
from spectra.output import render
from spectra.services import (
    BranchService,
    EigenfunctionService,
    SpectrumService,
    VerificationService,
    run_config,
)

logger = logging.getLogger(__name__)

OPTION_NAMES = (
    "kind", "tau_min", "tau_max", "tau_count", "tau_spacing", "j_min", "j_max",
    "oracle_n", "tol", "format", "out", "j", "tau", "samples", "inject_mu_offset",
)


class Command(BaseCommand):
    help = "Tables of exact branches, eigenvalues and eigenfunctions, and the verification report"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)
        for name in ("branch", "spectrum", "eigenfunction", "verify"):
            sub = subparsers.add_parser(name)
            self._add_common(sub)
            if name == "eigenfunction":
                sub.add_argument("--j", type=int, required=True)
                sub.add_argument("--tau", type=float, required=True)
                sub.add_argument("--samples", type=int, default=201)
            if name == "verify":
                sub.add_argument("--inject-mu-offset", type=float, default=None, help=argparse.SUPPRESS)

    @staticmethod
    def _add_common(parser):
        parser.add_argument("--kind", choices=["plus", "minus"], default="plus")
        parser.add_argument("--tau-min", type=float)
        parser.add_argument("--tau-max", type=float)
        parser.add_argument("--tau-count", type=int, default=20)
        parser.add_argument("--tau-spacing", choices=["linear", "log"])
        parser.add_argument("--j-min", type=int, default=1)
        parser.add_argument("--j-max", type=int, default=5)
        parser.add_argument("--oracle-n", type=int)
        parser.add_argument("--tol", type=float)
        parser.add_argument("--format", choices=["csv", "json"], default="csv")
        parser.add_argument("--out", type=str)

    def handle(self, *args, **options):
        command = options["subcommand"]
        try:
            cfg = run_config(
                command=command,
                **{name: options.get(name) for name in OPTION_NAMES},
            )
        except ValueError as e:
            raise CommandError(f"invalid configuration: {e}", returncode=2)

        try:
            if command == "branch":
                rows = BranchService.rows(cfg)
            elif command == "spectrum":
                rows = SpectrumService.rows(cfg)
            elif command == "eigenfunction":
                rows = EigenfunctionService.rows(cfg)
            else:
                verifier = VerificationService(cfg)
                rows = verifier.run()
        except ValueError as e:
            raise CommandError(f"{command} failed: {e}", returncode=2)
        except GelfandError as e:
            logger.error("%s: numerical failure: %s", command, e)
            raise CommandError(f"{command} failed: {e}", returncode=1)

        text = render(cfg.format, command, cfg.meta(), rows)
        if cfg.out:
            Path(cfg.out).write_text(text, encoding="utf-8", newline="\n")
            logger.info("%s: wrote %d rows to %s", command, len(rows), cfg.out)
        else:
            self.stdout.write(text, ending="")

        if command == "branch" and not BranchService.turning_point_consistent(cfg, rows):
            raise CommandError(
                f"branch: lambda' changes sign {BranchService.sign_changes(rows)} times, "
                f"expected {BranchService.expected_sign_changes(cfg, rows)}",
                returncode=1,
            )
        if command == "verify" and not verifier.passed:
            raise CommandError("verification failed", returncode=1)
