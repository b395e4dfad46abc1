# stdlib
import functools
from typing import Dict, Optional, Tuple

# 3rd-party
import click

# Local
from summstat.core.errors import SummStatError
from summstat.core.model import MethodId, Scenario


def handle_errors(func):
    """Library errors become a one-line message on stderr and exit status 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SummStatError as e:
            raise click.ClickException(str(e))
    return wrapper


def parse_method(ctx, param, value) -> Optional[MethodId]:
    if value is None:
        return None
    try:
        return MethodId.to_enum(value)
    except ValueError:
        raise click.BadParameter(
            f"{value!r} is not one of {', '.join(m.token for m in MethodId)}"
        )


def parse_methods(ctx, param, values) -> Tuple[MethodId, ...]:
    return tuple(parse_method(ctx, param, v) for v in values)


def parse_scenarios(ctx, param, values) -> Tuple[Scenario, ...]:
    try:
        return tuple(Scenario.to_enum(v) for v in values)
    except ValueError as e:
        raise click.BadParameter(str(e))


def parse_params(ctx, param, values) -> Dict[str, float]:
    params = {}
    for item in values:
        key, sep, raw = item.partition('=')
        if sep == '' or key.strip() == '':
            raise click.BadParameter(f"expected KEY=VALUE, got {item!r}")
        try:
            params[key.strip()] = float(raw)
        except ValueError:
            raise click.BadParameter(f"{key.strip()}={raw!r} is not a number")
    return params


def parse_int_list(ctx, param, value) -> Optional[Tuple[int, ...]]:
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.split(',') if v.strip() != '')
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated list of integers, got {value!r}")
