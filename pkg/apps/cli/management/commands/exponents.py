"""
Tabulate E_as(R, S) / E(S) over a grid of rates and SNRs.
"""
from apps.bound_engine.serializers import ExponentRowSerializer
from apps.bound_engine.services.exponents import cells_not_below_one, exponent_ratio_table
from apps.cli.management.base import ConeBoundCommand
from apps.cli.suites import DEFAULT_RATES, DEFAULT_SNRS_DB
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.manifest import RunManifest

COLUMNS = ('R', 'S_dB', 'E_as_nats', 'E_nats', 'ratio')


class Command(ConeBoundCommand):
    help = "Ratio of the asymptotic exponent of the new bound to the legacy exponent, one row per (R, S_dB)."
    command_name = 'exponents'

    def add_arguments(self, parser):
        parser.add_argument('--R', type=float, nargs='+', default=list(DEFAULT_RATES), dest='rates')
        parser.add_argument('--S-db', type=float, nargs='+', default=list(DEFAULT_SNRS_DB), dest='snrs_db')
        parser.add_argument('--threads', type=int, default=None, help="Worker cap; never changes results")
        self.add_output_arguments(parser)

    def run(self, **options):
        rates, snrs_db = options['rates'], options['snrs_db']
        manifest = RunManifest(
            command=self.command_name,
            parameters={'R': rates, 'S_dB': snrs_db},
            seed=None,
        )
        rows = exponent_ratio_table(rates, snrs_db, options['threads'])

        fmt = options['fmt'] or ('csv' if options['out'] else None)
        self.emit(ExponentRowSerializer(rows, many=True).data, manifest, fmt, options['out'], COLUMNS)

        offending = cells_not_below_one(rows)
        if offending:
            raise CustomException(
                message_key="RATIO_NOT_BELOW_ONE",
                context={'cells': [(row.R, row.S_dB, row.ratio) for row in offending]}
            )
