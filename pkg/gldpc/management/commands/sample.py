from gldpc.management.commands.spectrum import Command as SpectrumCommand


class Command(SpectrumCommand):
    help = 'Monte Carlo weight spectrum over random permutations (spectrum --sample)'
    command_name = 'sample'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='Path to an ensemble config (JSON)')
        parser.add_argument('--n', type=int, required=True, help='Number of variable nodes')
        parser.add_argument('--trials', type=int, required=True, help='Sampled codes')
        parser.add_argument('--seed', type=int, required=True, help='64-bit seed')
        parser.add_argument('--wmax', type=int, default=None, help='Largest weight counted')

    def run(self, **options):
        options['mode'] = 'sample'
        return super().run(**options)
