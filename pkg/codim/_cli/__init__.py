import importlib
import logging
import logging.handlers
import os
from pathlib import Path

import click

LOG_DIR_ENV_VAR = "CODIM_LOG_DIR"
LOG_DIR = Path.home() / ".codim" / "cli" / "logs"
LOG_FILE = "codim.log"
LOG_MAX_BYTES = 1_000_000
LOG_BACKUP_COUNT = 3

_CORE_COMMANDS = {
    "catalog": "codim._cli.catalog:catalog",
    "run": "codim._cli.run:run",
}


def _log_dir() -> Path:
    if override := os.environ.get(LOG_DIR_ENV_VAR):
        return Path(override).expanduser()

    return LOG_DIR


def _configure_logging():
    root = logging.getLogger()
    if root.handlers:
        return

    log_dir = _log_dir()
    log_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        log_dir / LOG_FILE,
        maxBytes=LOG_MAX_BYTES,
        backupCount=LOG_BACKUP_COUNT,
    )
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.INFO)


def _resolve_lazy(import_path: str):
    modname, _, attr = import_path.partition(":")
    return getattr(importlib.import_module(modname), attr)


class LazyGroup(click.Group):
    """
    Imports subcommand modules on first use so that ``codim --help`` stays fast.
    """

    def __init__(self, *args, lazy_subcommands=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.lazy_subcommands = dict(lazy_subcommands or {})

    def list_commands(self, ctx):
        return sorted({*super().list_commands(ctx), *self.lazy_subcommands.keys()})

    def get_command(self, ctx, cmd_name):
        if cmd_name in self.lazy_subcommands:
            return _resolve_lazy(self.lazy_subcommands[cmd_name])

        return super().get_command(ctx, cmd_name)


@click.group(cls=LazyGroup, lazy_subcommands=_CORE_COMMANDS)
@click.version_option(package_name="codimpy")
def cli():
    """Numerical checks for reduction of codimension in symmetric spaces."""
    _configure_logging()
