import click

from .api import compare, grid_search, oracle, run, synth
from .services.log import configure_logging


# 🔹 Grupul de comenzi
@click.group(name="cmp-sced")
@click.version_option("1.0", prog_name="cmp-sced")
def cli():
    """Security-constrained economic dispatch with emergency-zone cardinality penalties."""
    configure_logging()


# 🔹 Înregistrăm comenzile
cli.add_command(run.command)
cli.add_command(compare.command)
cli.add_command(grid_search.command)
cli.add_command(oracle.command)
cli.add_command(synth.command)


if __name__ == "__main__":
    cli()
