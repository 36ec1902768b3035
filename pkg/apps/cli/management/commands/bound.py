"""
Evaluate the multihop mutual information bound for one configuration.
"""
from apps.bound_engine.serializers import BoundQuerySerializer, BoundReportSerializer
from apps.bound_engine.services.report import build_report
from apps.bound_engine.types import METHODS
from apps.cli.management.base import ConeBoundCommand
from apps.shared.utils.manifest import RunManifest


class Command(ConeBoundCommand):
    help = "Bound on I(W; W_n) over n hops of a rate-R, length-N AWGN code."
    command_name = 'bound'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help="Number of hops")
        parser.add_argument('--N', type=int, required=True, help="Block length")
        parser.add_argument('--R', type=float, required=True, help="Rate in bits per channel use")
        snr = parser.add_mutually_exclusive_group(required=True)
        snr.add_argument('--snr', type=float, help="Linear SNR P0 / sigma_0^2")
        snr.add_argument('--snr-db', type=float, dest='snr_db', help="SNR in dB")
        parser.add_argument('--method', choices=METHODS, default='quadrature')
        parser.add_argument('--samples', type=int, default=None, help="Monte Carlo budget")
        self.add_seed_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, **options):
        data = {key: options[key] for key in ('n', 'N', 'R', 'snr', 'snr_db', 'method', 'samples', 'seed')}
        query = self.validated(BoundQuerySerializer, data)
        seed = self.resolve_seed(options['seed'])
        manifest = RunManifest(command=self.command_name, parameters=data, seed=seed)

        report = build_report(query, options['method'], options['samples'], seed, options['threads'])
        self.emit(BoundReportSerializer(report).data, manifest, options['fmt'], options['out'])
