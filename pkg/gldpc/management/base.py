"""
Shared plumbing of the analysis commands: --format / --log-base / --out,
config loading, report envelopes and the exit-code mapping of errors.
"""

import logging
import time

from django.core.management.base import BaseCommand, CommandError

from gldpc.exceptions import DGLDPCError
from gldpc.reports import build_envelope, config_hash, render_csv, render_json
from gldpc.serializers import load_config

logger = logging.getLogger(__name__)


class CommandResult:
    """Results payload plus the flat table used for CSV output"""

    def __init__(self, results, columns=None, rows=None, status='success', exit_code=0):
        self.results = results
        self.columns = columns or []
        self.rows = rows or []
        self.status = status
        self.exit_code = exit_code


class ReportCommand(BaseCommand):
    requires_system_checks = []
    command_name = None

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument('--format', choices=['json', 'csv'], default='json', help='Report format')
        parser.add_argument(
            '--log-base', choices=['e', '2'], default='e', help='Base of reported logarithms and growth rates'
        )
        parser.add_argument('--out', default=None, help='Write the report to this path instead of stdout')

    def add_command_arguments(self, parser):
        pass

    def load_ensemble(self, path):
        ensemble, config = load_config(path)
        self.digest = config_hash(config)
        return ensemble

    def parameters(self, options):
        """Report parameters: the command's own options without the output flags"""
        skip = {
            'format', 'out', 'stdout', 'stderr', 'verbosity', 'settings', 'pythonpath',
            'traceback', 'no_color', 'force_color', 'skip_checks',
        }
        return {key: value for key, value in sorted(options.items()) if key not in skip}

    def run(self, **options):
        raise NotImplementedError('subclasses of ReportCommand must provide a run() method')

    def handle(self, *args, **options):
        self.digest = None
        started = time.perf_counter()
        parameters = self.parameters(options)
        try:
            outcome = self.run(**options)
        except DGLDPCError as exc:
            logger.info('%s failed: %s', self.command_name, exc.detail)
            envelope = build_envelope(
                self.command_name,
                parameters,
                results=exc.partial_results,
                digest=self.digest,
                status='error',
                error=exc.as_dict(),
                timing=round(time.perf_counter() - started, 6),
            )
            if options['format'] == 'csv':
                error = exc.as_dict()
                self.emit(render_csv(['status', 'code', 'detail'], [{'status': 'error', **error}]), options)
            else:
                self.emit(render_json(envelope), options)
            raise CommandError(str(exc.detail), returncode=exc.exit_code) from exc

        envelope = build_envelope(
            self.command_name,
            parameters,
            results=outcome.results,
            digest=self.digest,
            status=outcome.status,
            timing=round(time.perf_counter() - started, 6),
        )
        if options['format'] == 'csv':
            self.emit(render_csv(outcome.columns, outcome.rows), options)
        else:
            self.emit(render_json(envelope), options)
        if outcome.exit_code:
            raise CommandError(f'{self.command_name}: {outcome.status}', returncode=outcome.exit_code)

    def emit(self, text, options):
        if options.get('out'):
            with open(options['out'], 'w', encoding='utf-8') as handle:
                handle.write(text if text.endswith('\n') else text + '\n')
        else:
            self.stdout.write(text)
