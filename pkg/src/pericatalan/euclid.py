"""Division-algorithm traces: quotients, remainders and sign offsets.

The closed-form word count consumes, for every pair (n, k) with
1 <= k < n, the full run of the division algorithm on (n, k) plus the
partial quotient sums that drive the alternating signs.  Indexing
convention: remainders r_{-1} = n, r_0 = k, ..., r_L = gcd(n, k),
r_{L+1} = 0, with r_{l-2} = q_l * r_{l-1} + r_l for l = 1 .. L+1.
"""

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class EuclidTrace:
    """One complete run of the division algorithm on (n, k), 1 <= k < n.

    remainders holds r_{-1} .. r_{L+1} (length steps + 3), quotients holds
    q_1 .. q_{L+1}, epsilons holds the offsets eps_0 .. eps_L where
    eps_0 = 1 and eps_{l+1} = eps_l + q_{l+1}.
    """

    n: int
    k: int
    remainders: tuple[int, ...]
    quotients: tuple[int, ...]
    epsilons: tuple[int, ...]
    steps: int

    def remainder(self, l: int) -> int:
        """r_l for -1 <= l <= steps + 1."""
        if not -1 <= l <= self.steps + 1:
            raise DomainError(f"remainder index {l} outside -1..{self.steps + 1}")
        return self.remainders[l + 1]

    def quotient(self, l: int) -> int:
        """q_l for 1 <= l <= steps + 1."""
        if not 1 <= l <= self.steps + 1:
            raise DomainError(f"quotient index {l} outside 1..{self.steps + 1}")
        return self.quotients[l - 1]

    def epsilon(self, l: int) -> int:
        """eps_l for 0 <= l <= steps."""
        if not 0 <= l <= self.steps:
            raise DomainError(f"epsilon index {l} outside 0..{self.steps}")
        return self.epsilons[l]

    @property
    def gcd(self) -> int:
        return self.remainders[self.steps + 1]


def euclid_trace(n: int, k: int) -> EuclidTrace:
    """Run the division algorithm on (n, k) and record the whole trace."""
    if n < 2 or k < 1 or k >= n:
        raise DomainError(f"euclid_trace needs 1 <= k < n with n >= 2, got n={n} k={k}")
    remainders = [n, k]
    quotients = []
    while remainders[-1] != 0:
        q, r = divmod(remainders[-2], remainders[-1])
        quotients.append(q)
        remainders.append(r)
    steps = len(quotients) - 1
    epsilons = [1]
    for l in range(steps):
        epsilons.append(epsilons[-1] + quotients[l])
    return EuclidTrace(
        n=n,
        k=k,
        remainders=tuple(remainders),
        quotients=tuple(quotients),
        epsilons=tuple(epsilons),
        steps=steps,
    )
