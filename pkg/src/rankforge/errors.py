class BudgetExceeded(RuntimeError):
    """An exhaustive computation would need more work units than allowed."""

    def __init__(self, needed: int, budget: int, what: str = "work"):
        super().__init__(f"{what} needs {needed} work units, budget is {budget}")
        self.needed = needed
        self.budget = budget
