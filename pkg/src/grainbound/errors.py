class ScaleLimitError(RuntimeError):
    """A requested computation exceeds a configured enumeration limit."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}={value} exceeds the enumeration limit {limit}")


class BudgetExhausted(RuntimeError):
    pass
