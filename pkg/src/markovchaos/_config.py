import os

BUDGET_ENV = "MARKOVCHAOS_ENUM_BUDGET"
DEFAULT_BUDGET = 1 << 20


def enumeration_budget() -> int:
    """Cap on enumerated words; override with ``MARKOVCHAOS_ENUM_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value
