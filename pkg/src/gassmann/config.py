"""Run configuration shared by the command line and the reproduction suite."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .groups import DEFAULT_MAX_ORDER, _is_prime
from .linalg import DEFAULT_FACTOR_BOUND
from .regulator import DEFAULT_DIRECT_EVAL_CAP
from .relations import DEFAULT_WITNESS_BUDGET

DEFAULT_Q_LIST = (2, 5, 7, 11, 13)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    format: str = "json"
    max_group_order: int = DEFAULT_MAX_ORDER
    direct_eval_cap: int = DEFAULT_DIRECT_EVAL_CAP
    witness_budget: int = DEFAULT_WITNESS_BUDGET
    factor_bound: int = DEFAULT_FACTOR_BOUND
    q_list: tuple = field(default=DEFAULT_Q_LIST)

    def __post_init__(self):
        if self.format not in ("json", "text"):
            raise ValueError(f"format must be json or text, not {self.format!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("max_group_order", "direct_eval_cap", "factor_bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        # a zero budget is allowed: it forces every local check to be inconclusive
        if self.witness_budget < 0:
            raise ValueError("witness_budget must be nonnegative")
        if not all(_is_prime(q) for q in self.q_list):
            raise ValueError("q_list entries must be primes")

    @property
    def pairing_seeds(self) -> tuple[int, int]:
        return (self.seed, self.seed + 1)

    def to_json(self) -> dict:
        d = asdict(self)
        d["q_list"] = list(self.q_list)
        return d
