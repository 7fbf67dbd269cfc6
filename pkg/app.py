"""
Application initialization for the A-loop engine.
"""
import logging
import os

from config import config


def create_app(config_name=None):
    """
    Application factory pattern.

    Args:
        config_name: Configuration name ('development', 'testing', 'production', or None for default)

    Returns:
        The selected configuration class, with logging configured from it
    """
    # Load configuration
    if config_name is None:
        config_name = os.getenv('ALOOP_ENV', 'default')
    if config_name not in config:
        raise KeyError(f'unknown configuration {config_name!r}; expected one of {", ".join(config)}')
    cfg = config[config_name]

    # Configure logging once
    logging.basicConfig(
        level=getattr(logging, str(cfg.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    logging.getLogger(__name__).debug('configuration %s loaded', config_name)
    return cfg


def main():
    from cli import cli
    cli(prog_name='aloop')


if __name__ == '__main__':
    main()
