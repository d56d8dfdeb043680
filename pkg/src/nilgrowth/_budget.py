import os

DEFAULT_BUDGET = 2 * 10**7


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the element budget.

    ``partial`` carries whatever was completed before the cap was hit.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def default_budget() -> int:
    value = os.environ.get("NILGROWTH_BUDGET")
    if value:
        budget = int(value)
        if budget <= 0:
            raise ValueError("NILGROWTH_BUDGET must be positive")
        return budget
    return DEFAULT_BUDGET


def resolve(budget: int | None) -> int:
    return default_budget() if budget is None else budget
