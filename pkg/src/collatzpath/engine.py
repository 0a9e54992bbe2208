"""Arbitrary-precision Collatz iteration with exact step accounting.

The iteration rule: an odd value x maps to 3x+1, an even value maps to x/2.
The path length D(x) is the number of single rule applications needed to
reach 1 from x, so D(1) = 0, D(7) = 16, D(2**n) = n.

The hot loop never applies rules one at a time.  For an odd x the product
y = 3x+1 is always even, so the fused step divides out all trailing zero
bits of y at once and accounts for 1 + t rule applications, where t is the
2-adic valuation of y.  Even starts are likewise reduced by a single shift.
After the first fused step every intermediate is odd, which makes the cost
per fused step one multiply and one shift.

Values are plain Python ints.  When gmpy2 is installed, inputs above a size
cutover run on mpz instead; GMP's multiply beats CPython's on multi-kilobit
operands by a wide margin.  Results are always converted back to int, so
callers never see mpz values.

Termination of the iteration is an open conjecture, so every iterating
function takes a cycle_guard step ceiling and raises CycleGuardExceeded
rather than looping without bound.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import CycleGuardExceeded, DomainError

if TYPE_CHECKING:
    from .expressions import NumberExpression

try:
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover - exercised only on bare installs
    _gmpy2 = None

# The universe of values: arbitrary-precision non-negative integers.
Natural = int

DEFAULT_CYCLE_GUARD = 10**12

# Below this bit length, native int arithmetic wins over mpz conversion.
_MPZ_CUTOVER_BITS = 4096


def _as_natural(value: object, minimum: int, name: str) -> int:
    """Coerce an integer-like to int and enforce a lower bound."""
    try:
        value = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}") from None
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def _as_guard(cycle_guard: object) -> int:
    return _as_natural(cycle_guard, 1, "cycle_guard")


def _trailing_zeros(y: int) -> int:
    # 2-adic valuation of a positive even-or-odd integer (0 when odd).
    return (y & -y).bit_length() - 1


@dataclass(frozen=True)
class PathResult:
    """Outcome of a full run down to 1.

    d is the total number of rule applications; it always equals
    odd_steps + even_steps.  peak_bit_length is the largest bit length of
    any value visited, the start included.
    """

    d: int
    odd_steps: int
    even_steps: int
    peak_bit_length: int

    def __post_init__(self) -> None:
        if self.d != self.odd_steps + self.even_steps:
            raise DomainError("d must equal odd_steps + even_steps")
        if min(self.d, self.odd_steps, self.even_steps, self.peak_bit_length) < 0:
            raise DomainError("path result fields must be non-negative")


@dataclass(frozen=True)
class IterationState:
    """Resumable snapshot of a single iteration.

    current is the value reached so far; the step counters say how it got
    there.  origin optionally records the expression the run was started
    from, which checkpointing uses to refuse resumes against the wrong
    input.  States are immutable; advancing returns a new state.
    """

    current: Natural
    steps: int = 0
    odd_steps: int = 0
    even_steps: int = 0
    peak_bit_length: int = 0
    origin: NumberExpression | None = None

    def __post_init__(self) -> None:
        current = _as_natural(self.current, 1, "current")
        object.__setattr__(self, "current", current)
        if self.steps != self.odd_steps + self.even_steps:
            raise DomainError("steps must equal odd_steps + even_steps")
        if min(self.odd_steps, self.even_steps) < 0:
            raise DomainError("step counters must be non-negative")
        if self.peak_bit_length < current.bit_length():
            raise DomainError("peak_bit_length cannot be below bit_length(current)")

    @property
    def halted(self) -> bool:
        return self.current == 1


def initial_state(x: Natural, origin: NumberExpression | None = None) -> IterationState:
    """Fresh state at x with zeroed counters."""
    x = _as_natural(x, 1, "x")
    return IterationState(
        current=x,
        steps=0,
        odd_steps=0,
        even_steps=0,
        peak_bit_length=x.bit_length(),
        origin=origin,
    )


def collatz_next(x: Natural) -> Natural:
    """One rule application: 3x+1 for odd x, x/2 for even x.

    There is no halting special case; 1 maps to 4.
    """
    x = _as_natural(x, 1, "x")
    if x & 1:
        return 3 * x + 1
    return x >> 1


def odd_step_accelerated(x: Natural) -> tuple[Natural, int]:
    """Fused step from an odd value.

    Returns (y / 2**t, 1 + t) where y = 3x+1 and t is the number of
    trailing zero bits of y.  Equivalent to 1 + t applications of
    collatz_next; the returned value is odd (possibly 1).
    """
    x = _as_natural(x, 1, "x")
    if not x & 1:
        raise DomainError(f"x must be odd, got {x}")
    y = 3 * x + 1
    t = _trailing_zeros(y)
    return y >> t, 1 + t


def _path_length_int(x: int, guard: int) -> PathResult:
    start = x
    odd = 0
    even = 0
    peak = x.bit_length()
    if not x & 1:
        t = (x & -x).bit_length() - 1
        x >>= t
        even = t
        if even > guard:
            raise CycleGuardExceeded(start, guard)
    while x != 1:
        y = 3 * x + 1
        b = y.bit_length()
        if b > peak:
            peak = b
        t = (y & -y).bit_length() - 1
        x = y >> t
        odd += 1
        even += t
        if odd + even > guard:
            raise CycleGuardExceeded(start, guard)
    return PathResult(d=odd + even, odd_steps=odd, even_steps=even, peak_bit_length=peak)


def _path_length_mpz(x: int, guard: int) -> PathResult:
    start = x
    scan = _gmpy2.bit_scan1
    x = _gmpy2.mpz(x)
    odd = 0
    even = 0
    peak = x.bit_length()
    if not x & 1:
        t = scan(x)
        x >>= t
        even = t
        if even > guard:
            raise CycleGuardExceeded(start, guard)
    while x != 1:
        y = 3 * x + 1
        b = y.bit_length()
        if b > peak:
            peak = b
        t = scan(y)
        x = y >> t
        odd += 1
        even += t
        if odd + even > guard:
            raise CycleGuardExceeded(start, guard)
    return PathResult(d=odd + even, odd_steps=odd, even_steps=even, peak_bit_length=peak)


def path_length(x: Natural, *, cycle_guard: int = DEFAULT_CYCLE_GUARD) -> PathResult:
    """Exact D(x) with odd/even step split and the peak bit length.

    Raises DomainError for x < 1 and CycleGuardExceeded if the running step
    count passes cycle_guard before 1 is reached.
    """
    x = _as_natural(x, 1, "x")
    guard = _as_guard(cycle_guard)
    if _gmpy2 is not None and x.bit_length() >= _MPZ_CUTOVER_BITS:
        return _path_length_mpz(x, guard)
    return _path_length_int(x, guard)


def advance(
    state: IterationState,
    max_steps: int,
    *,
    cycle_guard: int = DEFAULT_CYCLE_GUARD,
) -> IterationState:
    """Consume at most max_steps rule applications, halting at 1.

    The budget is exact even when it splits a fused step: the 3x+1 is
    applied first and only as many halvings as the budget still allows, so
    the returned current may be even.  A halted state (current = 1) is
    absorbing.  Never overshoots the first arrival at 1; when 3x+1 is a
    power of two the fused step consumes exactly the halvings needed to
    land on 1 and stops there.
    """
    max_steps = _as_natural(max_steps, 0, "max_steps")
    guard = _as_guard(cycle_guard)
    x = state.current
    if x == 1 or max_steps == 0:
        return state
    use_mpz = _gmpy2 is not None and x.bit_length() >= _MPZ_CUTOVER_BITS
    if use_mpz:
        scan = _gmpy2.bit_scan1
        x = _gmpy2.mpz(x)
    else:
        scan = _trailing_zeros
    odd = state.odd_steps
    even = state.even_steps
    peak = state.peak_bit_length
    remaining = max_steps
    while remaining and x != 1:
        if x & 1:
            y = 3 * x + 1
            b = y.bit_length()
            if b > peak:
                peak = b
            t = scan(y)
            if t + 1 <= remaining:
                x = y >> t
                odd += 1
                even += t
                remaining -= t + 1
            else:
                x = y >> (remaining - 1)
                odd += 1
                even += remaining - 1
                remaining = 0
        else:
            t = scan(x)
            if t > remaining:
                t = remaining
            x >>= t
            even += t
            remaining -= t
        if odd + even > guard:
            raise CycleGuardExceeded(int(state.current), guard)
    return IterationState(
        current=int(x),
        steps=odd + even,
        odd_steps=odd,
        even_steps=even,
        peak_bit_length=peak,
        origin=state.origin,
    )


def raw_advance(
    state: IterationState,
    exact_steps: int,
    *,
    cycle_guard: int = DEFAULT_CYCLE_GUARD,
) -> IterationState:
    """Apply exactly exact_steps rule applications with no halting at 1.

    The trivial cycle 1 -> 4 -> 2 -> 1 is permitted; this is the variant
    needed to follow a path through 1 or to step an algebraic identity a
    fixed number of times.
    """
    exact_steps = _as_natural(exact_steps, 0, "exact_steps")
    guard = _as_guard(cycle_guard)
    if exact_steps == 0:
        return state
    x = state.current
    use_mpz = _gmpy2 is not None and x.bit_length() >= _MPZ_CUTOVER_BITS
    if use_mpz:
        scan = _gmpy2.bit_scan1
        x = _gmpy2.mpz(x)
    else:
        scan = _trailing_zeros
    odd = state.odd_steps
    even = state.even_steps
    peak = state.peak_bit_length
    remaining = exact_steps
    while remaining:
        if x & 1:
            y = 3 * x + 1
            b = y.bit_length()
            if b > peak:
                peak = b
            t = scan(y)
            take = t + 1 if t + 1 <= remaining else remaining
            x = y >> (take - 1)
            odd += 1
            even += take - 1
            remaining -= take
        else:
            t = scan(x)
            if t > remaining:
                t = remaining
            x >>= t
            even += t
            remaining -= t
        if odd + even > guard:
            raise CycleGuardExceeded(int(state.current), guard)
    return IterationState(
        current=int(x),
        steps=odd + even,
        odd_steps=odd,
        even_steps=even,
        peak_bit_length=peak,
        origin=state.origin,
    )


def trace(
    x: Natural,
    max_entries: int | None = None,
    *,
    cycle_guard: int = DEFAULT_CYCLE_GUARD,
) -> list[Natural]:
    """The visited sequence from x, inclusive, down to the first 1.

    Truncates after max_entries elements when given.  trace(x) has length
    D(x) + 1 when untruncated.  This materializes every value, so it steps
    one rule at a time; use path_length when only counts are needed.
    """
    x = _as_natural(x, 1, "x")
    guard = _as_guard(cycle_guard)
    if max_entries is not None:
        max_entries = _as_natural(max_entries, 0, "max_entries")
        if max_entries == 0:
            return []
    visited = [x]
    steps = 0
    while x != 1:
        if max_entries is not None and len(visited) >= max_entries:
            break
        if x & 1:
            x = 3 * x + 1
        else:
            x >>= 1
        steps += 1
        if steps > guard:
            raise CycleGuardExceeded(visited[0], guard)
        visited.append(x)
    return visited
