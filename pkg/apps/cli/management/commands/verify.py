"""
Run the invariant suites and report one JSON line per check.
"""
from django.conf import settings
from rest_framework.renderers import JSONRenderer

from apps.cli.management.base import ConeBoundCommand
from apps.cli.suites import ALL, SUITES, run_suite
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.manifest import RunManifest


class Command(ConeBoundCommand):
    help = "Verify the geometric, matrix and exponent invariants; exit 0 only when every check passes."
    command_name = 'verify'

    def add_arguments(self, parser):
        parser.add_argument('suite', help=f"One of {', '.join([*SUITES, ALL])}")
        parser.add_argument('--samples', type=int, default=None, help="Monte Carlo budget per estimate")
        self.add_seed_arguments(parser)
        parser.add_argument('--out', default=None, help="Write the JSON lines here and the manifest next to it")

    def run(self, **options):
        samples = settings.CONE_BOUND['VERIFY_SAMPLES'] if options['samples'] is None else options['samples']
        if samples < 1:
            raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': samples})
        seed = self.resolve_seed(options['seed'])
        manifest = RunManifest(
            command=self.command_name,
            parameters={'suite': options['suite'], 'samples': samples},
            seed=seed,
        )

        results = run_suite(options['suite'], samples, seed, options['threads'])
        renderer = JSONRenderer()
        lines = ''.join(renderer.render(result.to_dict()).decode('utf-8') + '\n' for result in results)
        self.emit_text(lines, manifest, options['out'])

        failed = [result.name for result in results if not result.passed]
        if failed:
            raise CustomException(
                message_key="CHECKS_FAILED",
                context={'failed': len(failed), 'total': len(results), 'names': ', '.join(failed)}
            )
