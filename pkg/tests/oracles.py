"""Independent oracles used to check the package from the outside.

Everything here is deliberately primitive: digit-by-digit spigot for pi,
Pascal's triangle by addition, polynomial recurrences, and Fraction
Taylor sums with explicit remainder bounds.  Nothing imports flintlab.
"""

from fractions import Fraction
from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"


@lru_cache(maxsize=8)
def spigot_pi_digits(count: int) -> str:
    """First `count` decimal digits of pi as "3.1415..." via the
    unbounded streaming spigot."""
    q, r, t, k, m, x = 1, 0, 1, 1, 3, 3
    digits = []
    while len(digits) < count:
        if 4 * q + r - t < m * t:
            digits.append(m)
            q, r, m = 10 * q, 10 * (r - m * t), (10 * (3 * q + r)) // t - 10 * m
        else:
            q, r, t, k, m, x = (q * k, (2 * q + r) * x, t * x, k + 1,
                                (q * (7 * k + 2) + r * x) // (t * x), x + 2)
    return f"{digits[0]}." + "".join(map(str, digits[1:]))


def load_pi_fixture() -> str:
    return (DATA_DIR / "pi_1000.txt").read_text().strip()


@lru_cache(maxsize=8)
def pi_fraction(digit_count: int = 1000) -> tuple[Fraction, Fraction]:
    """(approximation, absolute error bound) from the spigot digits."""
    text = spigot_pi_digits(digit_count)
    approx = Fraction(text.replace(".", "")) / 10 ** (digit_count - 1)
    return approx, Fraction(1, 10 ** (digit_count - 1))


def pascal_triangle(rows: int) -> list[list[int]]:
    """Rows 0..rows-1 of Pascal's triangle, built by addition only."""
    triangle = [[1]]
    for _ in range(rows - 1):
        prev = triangle[-1]
        triangle.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return triangle


def chebyshev_u_at_one(m: int) -> int:
    """U_m(1) by the three-term recurrence (no closed form used)."""
    if m == 0:
        return 1
    prev, cur = 1, 2
    for _ in range(m - 1):
        prev, cur = cur, 2 * cur - prev
    return cur


def chebyshev_u_coeffs(m: int) -> list[int]:
    """Dense coefficient list of U_m, ascending powers, via the
    recurrence U_{j+1}(x) = 2x U_j(x) - U_{j-1}(x)."""
    prev = [1]
    if m == 0:
        return prev
    cur = [0, 2]
    for _ in range(m - 1):
        shifted = [0] + [2 * c for c in cur]
        nxt = [shifted[i] - (prev[i] if i < len(prev) else 0)
               for i in range(len(shifted))]
        prev, cur = cur, nxt
    return cur


def taylor_sin(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """(partial Taylor sum of sin x, remainder bound).  The bound is the
    absolute value of the first omitted term times 2, valid whenever that
    term already decreases geometrically (|x|^2 < (2*terms)(2*terms+1))."""
    total = Fraction(0)
    term = x
    for i in range(terms):
        total += term
        term *= -x * x / ((2 * i + 2) * (2 * i + 3))
    return total, 2 * abs(term)


def taylor_cos(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    total = Fraction(0)
    term = Fraction(1)
    for i in range(terms):
        total += term
        term *= -x * x / ((2 * i + 1) * (2 * i + 2))
    return total, 2 * abs(term)


def atanh_ln(n: int, terms: int) -> tuple[Fraction, Fraction]:
    """(partial sum for ln n, remainder bound) via
    ln n = 2 atanh((n-1)/(n+1)) summed with Fractions."""
    y = Fraction(n - 1, n + 1)
    total = Fraction(0)
    power = y
    for i in range(terms):
        total += power / (2 * i + 1)
        power *= y * y
    # Geometric tail: remaining terms < power/(1 - y^2)
    bound = power / (1 - y * y)
    return 2 * total, 2 * bound


def sin_by_reduction(n: int, digit_count: int = 80,
                     taylor_terms: int = 40) -> tuple[Fraction, Fraction]:
    """(approximation, error bound) for sin of an integer via spigot-pi
    argument reduction and a Fraction Taylor sum; fully independent of
    the package."""
    pi_apx, pi_err = pi_fraction(digit_count)
    k = round(n / pi_apx)
    r = n - k * pi_apx
    reduction_err = abs(k) * pi_err
    approx, taylor_err = taylor_sin(r, taylor_terms)
    # |sin| is 1-Lipschitz, so the pi error passes through linearly.
    if k % 2:
        approx = -approx
    return approx, taylor_err + reduction_err
