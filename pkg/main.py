import sys
from pathlib import Path

import click
from dotenv import load_dotenv


def _logger(config, log_dir: Path = None):
    from src import Logging, intercept_standard_logging

    logging = Logging(
        retention=config["log"]["retention"],
        debug_mode=config["debug-mode"],
        format=config["log"]["format"],
        log_dir=log_dir,
    )
    intercept_standard_logging(logging.get_logger(), config["debug-mode"])
    return logging


@click.group()
def cli():
    """Hessian quotient curvature graphs over the hyperbolic plane."""
    load_dotenv()


@cli.command()
@click.option("--config", "config_path", default="config.toml", show_default=True, help="Run configuration (TOML).")
@click.option("--out", "out_dir", default=None, help="Output directory, overrides [output].dir.")
def solve(config_path: str, out_dir: str):
    """Solve the configured Dirichlet problem and verify the estimates."""
    from src import Config, ConfigError, WriterError
    from src.runner import EXIT_CONFIG, Runner

    try:
        config = Config(config_path)
    except ConfigError as e:
        click.echo(f"Configuration error: {e}", err=True)
        sys.exit(EXIT_CONFIG)

    out = Path(out_dir or config["output"]["dir"])
    logging = _logger(config)
    logger = logging.get_logger()
    runner = Runner(config, logger)
    try:
        cfg = runner.solve_config()
    except ConfigError as e:
        click.echo(f"Configuration error: {e}", err=True)
        logging.close()
        sys.exit(EXIT_CONFIG)

    if config["log"]["file"]:
        logging.add_file_sink(out / "logs")
    runner.load_writers("writers")
    result = runner.run(cfg)
    try:
        runner.write(result, out)
    except WriterError as e:
        logger.error(str(e))
        logging.close()
        sys.exit(EXIT_CONFIG)

    logging.close()
    sys.exit(result.exit_code)


@cli.command()
@click.option("--seed", default=None, type=int, help="Seed of the randomized suites.")
@click.option("--out", "out_dir", default="out", show_default=True, help="Directory of selftest.json.")
def selftest(seed: int, out_dir: str):
    """Run the algebraic suites and the acceptance instances."""
    from src import Config, ConfigError, Settings, dump_json, resolve_threads
    from src.runner import EXIT_CHECKS, EXIT_CONFIG, EXIT_OK
    from src.selftest import selftest as run_selftest

    logging = _logger(Config(None))
    logger = logging.get_logger()
    try:
        threads = resolve_threads(Settings.get("suites")["threads"])
    except ConfigError as e:
        click.echo(f"Configuration error: {e}", err=True)
        logging.close()
        sys.exit(EXIT_CONFIG)
    report = run_selftest(seed, threads, logger)
    click.echo(report.table())

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "selftest.json", "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_json(report.to_dict()))
    logging.close()
    sys.exit(EXIT_OK if report.passed else EXIT_CHECKS)


@cli.command()
@click.option("--n", "n", required=True, type=int, help="Dimension.")
@click.option("--k", "k", required=True, type=int, help="Numerator order.")
@click.option("--l", "l", required=True, type=int, help="Denominator order.")
@click.option("--samples", default=10_000, show_default=True, type=int, help="Samples per suite.")
@click.option("--seed", default=7, show_default=True, type=int)
def suites(n: int, k: int, l: int, samples: int, seed: int):
    """Run the randomized algebraic suites for one (n, k, l)."""
    from src import Config, ConfigError, DomainError, Settings, algebraic_suites, resolve_threads
    from src.runner import EXIT_CHECKS, EXIT_CONFIG, EXIT_OK

    if not 0 <= l < k <= n or samples < 1:
        click.echo("Invalid suite parameters: need 0 <= l < k <= n and samples >= 1", err=True)
        sys.exit(EXIT_CONFIG)
    logging = _logger(Config(None))
    sizes = dict.fromkeys(("sigma_oracle", "ellipticity", "newton_maclaurin", "concavity", "matrix_bound", "b0"), samples)
    try:
        threads = resolve_threads(Settings.get("suites")["threads"])
        report = algebraic_suites(seed, sizes, [(n, k, l)], threads, logging.get_logger())
    except (ConfigError, DomainError) as e:
        click.echo(str(e), err=True)
        logging.close()
        sys.exit(EXIT_CONFIG)
    click.echo(report.table())
    logging.close()
    sys.exit(EXIT_OK if report.passed else EXIT_CHECKS)


if __name__ == "__main__":
    cli()
