"""
Monte Carlo simulation of a decode-and-forward cascade against the bound.
"""
import json
from pathlib import Path

from apps.cli.management.base import ConeBoundCommand
from apps.codebook_sim.serializers import CascadeConfigSerializer, CascadeReportSerializer, CascadeRowSerializer
from apps.codebook_sim.services.cascade import check_bound, simulate_cascade
from apps.codebook_sim.types import CODE_KINDS, DECODERS
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.manifest import RunManifest

CONFIG_FLAGS = ('n', 'N', 'R', 'P0', 'sigma', 'sigma_floor', 'code_kind', 'decoder', 'shots', 'seed')


class Command(ConeBoundCommand):
    help = "Simulate n hops of a code over AWGN and compare the estimated I(W; W_n) with the bound."
    command_name = 'simulate'

    def add_arguments(self, parser):
        parser.add_argument('--config', default=None, help="JSON file with the cascade configuration")
        parser.add_argument('--n', type=int, default=None)
        parser.add_argument('--N', type=int, default=None)
        parser.add_argument('--R', type=float, default=None)
        parser.add_argument('--P0', type=float, default=None)
        parser.add_argument('--sigma', type=float, nargs='+', default=None, help="One value, or one per hop")
        parser.add_argument('--sigma-floor', type=float, default=None, dest='sigma_floor')
        parser.add_argument('--code-kind', choices=CODE_KINDS, default=None, dest='code_kind')
        parser.add_argument('--decoder', choices=DECODERS, default=None)
        parser.add_argument('--shots', type=int, default=None, help="Transmissions per hop per message")
        self.add_seed_arguments(parser)
        self.add_output_arguments(parser, formats=('json', 'csv'))

    def run(self, **options):
        data = self._load_config(options['config']) if options['config'] else {}
        # flags override the file
        data.update({key: options[key] for key in CONFIG_FLAGS if options.get(key) is not None})
        config = self.validated(CascadeConfigSerializer, data)
        manifest = RunManifest(
            command=self.command_name,
            parameters=CascadeConfigSerializer(config).data,
            seed=config.seed,
        )

        report = simulate_cascade(config, options['threads'])
        fmt = options['fmt'] or 'json'
        if fmt == 'csv':
            payload = CascadeRowSerializer(report.flat_row()).data
        else:
            payload = CascadeReportSerializer(report).data
        self.emit(payload, manifest, fmt, options['out'])

        check_bound(report)

    @staticmethod
    def _load_config(path: str) -> dict:
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except (OSError, ValueError) as exc:
            raise CustomException(message_key="CONFIG_PARSE_ERROR", context={'path': path, 'reason': str(exc)})
        if not isinstance(data, dict):
            raise CustomException(
                message_key="CONFIG_PARSE_ERROR",
                context={'path': path, 'reason': "top level must be a JSON object"}
            )
        return data
