from enum import Enum
from decimal import Decimal, ROUND_HALF_UP


def to_enum(cls, val):
    """Convenience method to take in any value type and try to turn it into an Enum instance"""
    assert issubclass(cls, Enum)
    if type(val) is cls:
        return val
    elif val in cls._value2member_map_:
        return cls(val)
    elif val in cls.__members__:
        return cls[val]
    elif type(val) is str:
        # CLI and CSV tokens: case-insensitive, dashes allowed for underscores
        token = val.strip().lower().replace('-', '_')
        for member in cls:
            if token == str(member.value).lower() or token == member.name.lower():
                return member
    raise ValueError(f"Unable to convert {val} into an instance of {cls.__name__}")


def setup_utils():
    Enum.to_enum = classmethod(to_enum)


def round_half_away(value: float, places: int) -> Decimal:
    """Round to a fixed number of decimal places, ties away from zero."""
    quantum = Decimal(1).scaleb(-places)
    # repr() gives the shortest string that round-trips, so 0.0005 stays a tie
    return Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)


def format_fixed(value: float, places: int) -> str:
    """Fixed-point text with exactly `places` decimals, e.g. table emission."""
    rounded = round_half_away(value, places)
    if rounded == 0:
        rounded = abs(rounded)
    return f"{rounded:.{places}f}"


def format_number(value: float, places: int = 6) -> str:
    """Up to `places` decimals with trailing zeros dropped, e.g. batch emission."""
    text = format_fixed(value, places)
    if '.' in text:
        text = text.rstrip('0').rstrip('.')
    return text
