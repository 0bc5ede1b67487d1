from collections.abc import Callable

import click

from codim.model.config import NumericsConfig

SEED_ENV_VAR = "CODIM_SEED"


class CLIContext:
    """
    Settings collected from global options, shared by every subcommand.
    """

    def __init__(self):
        self.tol_scale: float | None = None
        self.seed: int | None = None

    def numerics(self) -> NumericsConfig:
        """
        ``--tol-scale`` wins over ``CODIM_TOL_SCALE``.
        """
        if self.tol_scale is None:
            return NumericsConfig.from_env()

        return NumericsConfig(tol_scale=self.tol_scale)


pass_cli_context = click.make_pass_decorator(CLIContext, ensure=True)


def _set_on_ctx(field: str) -> Callable:
    def callback(ctx: click.Context, _param, value):
        if value is None:
            return
        cli_ctx = ctx.ensure_object(CLIContext)
        setattr(cli_ctx, field, value)

    return callback


def tol_scale_option() -> Callable:
    return click.option(
        "--tol-scale",
        type=click.FloatRange(min=0, min_open=True),
        envvar="CODIM_TOL_SCALE",
        help="Multiply every check tolerance by this factor.",
        callback=_set_on_ctx("tol_scale"),
        expose_value=False,
    )


def seed_option() -> Callable:
    return click.option(
        "--seed",
        type=int,
        envvar=SEED_ENV_VAR,
        help="Seed for random pairs, subspaces and initial conditions (overrides the scenario).",
        callback=_set_on_ctx("seed"),
        expose_value=False,
    )
