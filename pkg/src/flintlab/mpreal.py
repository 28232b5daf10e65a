"""Arbitrary-precision reals with guaranteed absolute error bounds.

The value model is a dyadic ball: a center ``man * 2**exp`` (exact big
integers) plus an exact non-negative :class:`~fractions.Fraction`
``err`` such that the true mathematical quantity lies in
``[center - err, center + err]``.  Public operations take a target
precision ``bits`` and return values whose ``err`` is at most
``2**-bits`` (assuming exact or near-exact inputs); nothing here is
correctly rounded, only error-bounded.

Constants are produced by exact rational binary splitting:

* pi from the Machin identity  pi/4 = 4*atan(1/5) - atan(1/239),
* ln 2 from                    ln 2 = 2*atanh(1/3),

and are served as *canonically rounded* mantissas ``round(x * 2**w)``.
Canonical rounding makes every mantissa a pure function of ``w``: a
request never observes how much precision happens to be cached, so
results are bit-reproducible across processes, thread schedules and
cache warm-up order.  The rounding is certified by checking that the
uncertainty interval around the stored rational stays clear of the
nearest half-integer, refining the rational (and only then paying for a
new binary-splitting run) when the check fails.

Sine at integer arguments follows the classical reduction
``n = k*pi + r`` with ``k = round(n/pi)`` and ``r`` in (-pi/2, pi/2);
the guard-bit budget is ``ceil(log2 n) + 32`` on top of the target,
because the subtraction ``n - k*pi`` cancels about ``log2 n`` leading
bits.  The Taylor kernels at the bottom of the file work on plain
integers at a fixed scale and report their rounding as a ulp count,
which callers convert into the exact ``err`` fraction.
"""

from __future__ import annotations

import threading
from decimal import Decimal
from fractions import Fraction

from .errors import DomainError, ResourceLimitError

__all__ = [
    "MAX_BITS",
    "MpReal",
    "PiCache",
    "PI_CACHE",
    "clog2",
    "compute_pi",
    "cos_mp",
    "cos_reduced",
    "exact_decimal",
    "fx_atanh",
    "fx_cos",
    "fx_exp_small",
    "fx_ln_int",
    "fx_sin",
    "guaranteed_decimal",
    "ln2_mantissa",
    "machin_pi_rational",
    "pi_mantissa",
    "reduce_fixed",
    "reduce_mod_pi",
    "round_div",
    "sin_int",
    "sin_mp",
    "sin_reduced",
]

MAX_BITS = 10_000_000

_ZERO = Fraction(0)


def clog2(n: int) -> int:
    """ceil(log2 n) for n >= 1."""
    return (n - 1).bit_length()


def round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0; exact halves round toward +inf."""
    return (2 * a + b) // (2 * b)


def _require_bits(bits: int) -> None:
    if not isinstance(bits, int) or bits < 8:
        raise DomainError(f"precision must be an integer >= 8 bits, got {bits!r}")
    if bits > MAX_BITS:
        raise ResourceLimitError(
            f"requested {bits} bits exceeds the configured maximum of {MAX_BITS}"
        )


# --------------------------------------------------------------------------
# exact rational constants via binary splitting
# --------------------------------------------------------------------------

def _atan_sum_split(q2: int, lo: int, hi: int, alternating: bool) -> tuple[int, int]:
    """(N, D) with N/D = sum_{i=lo}^{hi-1} s_i / ((2i+1) * q2^(i-lo)).

    s_i = (-1)^i when alternating (arctangent), else +1 (atanh).  Plain
    divide-and-conquer on exact integers.
    """
    if hi - lo == 1:
        sign = -1 if (alternating and (lo & 1)) else 1
        return sign, 2 * lo + 1
    mid = (lo + hi) // 2
    nl, dl = _atan_sum_split(q2, lo, mid, alternating)
    nr, dr = _atan_sum_split(q2, mid, hi, alternating)
    p = q2 ** (mid - lo)
    return nl * dr * p + nr * dl, dl * dr * p


def machin_pi_rational(w: int) -> tuple[int, int]:
    """Exact rational (num, den) with |pi - num/den| <= 2**-w.

    pi = 16*atan(1/5) - 4*atan(1/239); the term counts leave more than
    20 bits of slack below the advertised bound.
    """
    n5 = int((w + 16) / 4.643856) + 2        # log2(25) = 4.6438...
    n239 = int((w + 16) / 15.801595) + 2     # log2(239^2) = 15.8015...
    na, da = _atan_sum_split(25, 0, n5, True)
    nb, db = _atan_sum_split(239 * 239, 0, n239, True)
    num = 16 * na * db * 239 - 4 * nb * da * 5
    den = 5 * da * 239 * db
    return num, den


def _atanh_ln2_rational(w: int) -> tuple[int, int]:
    """Exact rational (num, den) with |ln2 - num/den| <= 2**-w."""
    n = int((w + 16) / 3.169925) + 2         # log2(9) = 3.1699...
    nn, dd = _atan_sum_split(9, 0, n, False)
    return 2 * nn, 3 * dd


class _ConstSource:
    """Monotone store of a rational approximation to one irrational constant.

    ``mantissa(w)`` returns ``round(x * 2**w)`` exactly.  The answer
    depends on (constant, w) alone -- never on cache state -- which is
    what makes every downstream value reproducible.  Certification: with
    |x - num/den| <= 2**-src_w, the rounding is determined once the
    interval of half-width 2**(w-src_w) around num/den * 2**w keeps a
    factor-2 margin from the nearest half-integer; otherwise the source
    is refined and the check repeated (terminates: x is irrational).
    """

    def __init__(self, name: str, refine) -> None:
        self._name = name
        self._refine = refine
        self._lock = threading.Lock()
        self._src_w = 0
        self._num = 0
        self._den = 1
        self._mans: dict[int, int] = {}
        self.refinements = 0

    def mantissa(self, w: int) -> int:
        if w > MAX_BITS + 256:
            raise ResourceLimitError(
                f"{self._name}: {w} working bits exceeds the configured maximum"
            )
        with self._lock:
            man = self._mans.get(w)
            if man is not None:
                return man
            src_w = max(self._src_w, w + 16)
            while True:
                if src_w > self._src_w:
                    self._num, self._den = self._refine(src_w)
                    self._src_w = src_w
                    self.refinements += 1
                scaled = self._num << w
                r = scaled % self._den
                if abs(2 * r - self._den) << (self._src_w - w) > 4 * self._den:
                    man = round_div(scaled, self._den)
                    self._mans[w] = man
                    return man
                src_w *= 2

    def rational(self, w: int) -> tuple[int, int]:
        """Best stored rational after ensuring source error <= 2**-w."""
        with self._lock:
            if self._src_w < w:
                self._num, self._den = self._refine(w)
                self._src_w = w
                self.refinements += 1
            return self._num, self._den


_PI_SOURCE = _ConstSource("pi", machin_pi_rational)
_LN2_SOURCE = _ConstSource("ln2", _atanh_ln2_rational)


def pi_mantissa(w: int) -> int:
    """round(pi * 2**w), exactly; deterministic in w."""
    return _PI_SOURCE.mantissa(w)


def ln2_mantissa(w: int) -> int:
    """round(ln2 * 2**w), exactly; deterministic in w."""
    return _LN2_SOURCE.mantissa(w)


# --------------------------------------------------------------------------
# the ball type
# --------------------------------------------------------------------------

class MpReal:
    """Dyadic ball: center ``man * 2**exp``, guaranteed absolute ``err``.

    ``bits`` is the precision target the value was produced for; it is
    display metadata -- the binding guarantee is ``err``.  Instances are
    treated as immutable.
    """

    __slots__ = ("man", "exp", "err", "bits")

    def __init__(self, man: int, exp: int, err: Fraction | int = _ZERO,
                 bits: int | None = None) -> None:
        self.man = man
        self.exp = exp
        self.err = err if isinstance(err, Fraction) else Fraction(err)
        if self.err < 0:
            raise DomainError("error bound must be non-negative")
        self.bits = bits if bits is not None else max(8, -exp)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, value: int, bits: int | None = None) -> "MpReal":
        return cls(value, 0, _ZERO, bits)

    @classmethod
    def from_fraction(cls, value: Fraction, bits: int) -> "MpReal":
        _require_bits(bits)
        w = bits + 8
        man = round_div(value.numerator << w, value.denominator)
        err = abs(value - Fraction(man, 1 << w))
        return cls(man, -w, err, bits)

    @classmethod
    def from_decimal(cls, text: str, bits: int) -> "MpReal":
        try:
            value = Fraction(Decimal(text))
        except Exception as exc:
            raise DomainError(f"not a decimal number: {text!r}") from exc
        return cls.from_fraction(value, bits)

    @classmethod
    def zero(cls, bits: int | None = None) -> "MpReal":
        return cls(0, 0, _ZERO, bits)

    # -- views -------------------------------------------------------------

    def center(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def lower(self) -> Fraction:
        return self.center() - self.err

    def upper(self) -> Fraction:
        return self.center() + self.err

    @property
    def is_exact(self) -> bool:
        return self.err == 0

    def __float__(self) -> float:
        return float(self.center())

    def sign_certain(self) -> int | None:
        """-1/0(+exact zero)/+1 when the ball determines the sign, else None."""
        c = self.center()
        if c - self.err > 0:
            return 1
        if c + self.err < 0:
            return -1
        if c == 0 and self.err == 0:
            return 0
        return None

    def definitely_lt(self, other: "MpReal") -> bool:
        return self.upper() < other.lower()

    def definitely_gt(self, other: "MpReal") -> bool:
        return self.lower() > other.upper()

    # -- arithmetic --------------------------------------------------------

    def neg(self) -> "MpReal":
        return MpReal(-self.man, self.exp, self.err, self.bits)

    def abs_(self) -> "MpReal":
        return MpReal(abs(self.man), self.exp, self.err, self.bits)

    def add(self, other: "MpReal", bits: int | None = None) -> "MpReal":
        e = min(self.exp, other.exp)
        man = (self.man << (self.exp - e)) + (other.man << (other.exp - e))
        out = MpReal(man, e, self.err + other.err, bits or self.bits)
        return out.round_to(bits) if bits is not None else out

    def sub(self, other: "MpReal", bits: int | None = None) -> "MpReal":
        return self.add(other.neg(), bits)

    def mul(self, other: "MpReal", bits: int | None = None) -> "MpReal":
        err = (abs(self.center()) * other.err
               + abs(other.center()) * self.err
               + self.err * other.err)
        out = MpReal(self.man * other.man, self.exp + other.exp, err,
                     bits or self.bits)
        return out.round_to(bits) if bits is not None else out

    def mul_int(self, m: int) -> "MpReal":
        return MpReal(self.man * m, self.exp, self.err * abs(m), self.bits)

    def div(self, other: "MpReal", bits: int) -> "MpReal":
        _require_bits(bits)
        if abs(other.center()) <= other.err:
            raise DomainError("division by a ball containing zero")
        w = bits + 16
        num_man, den_man = self.man, other.man
        if den_man < 0:
            num_man, den_man = -num_man, -den_man
        shift = w + self.exp - other.exp
        if shift >= 0:
            man = round_div(num_man << shift, den_man)
        else:
            man = round_div(num_man, den_man << -shift)
        center = Fraction(man, 1 << w)
        ends = []
        for a in (self.lower(), self.upper()):
            for b in (other.lower(), other.upper()):
                ends.append(a / b)
        err = max(max(ends) - center, center - min(ends))
        return MpReal(man, -w, err, bits)

    def round_to(self, bits: int) -> "MpReal":
        """Coarsen the center to scale 2**-(bits+8), folding the shift into err."""
        _require_bits(bits)
        exp_t = -(bits + 8)
        if self.exp >= exp_t:
            man, err = self.man, self.err
            exp_t = self.exp
        else:
            man = round_div(self.man, 1 << (exp_t - self.exp))
            err = self.err + abs(self.center() - Fraction(man, 1 << -exp_t))
        # keep err denominators bounded: round the bound itself up
        scale = bits + 24
        err = Fraction(-((-err.numerator << scale) // err.denominator),
                       1 << scale) if err else _ZERO
        return MpReal(man, exp_t, err, bits)

    # -- display -----------------------------------------------------------

    def decimal(self, max_digits: int | None = None) -> str:
        """Decimal rendering restricted to digits the error bound guarantees."""
        return guaranteed_decimal(self.center(), self.err, max_digits)

    def __repr__(self) -> str:
        if self.err == 0:
            etxt = "0"
        else:
            e2 = self.err.numerator.bit_length() - self.err.denominator.bit_length()
            etxt = f"<~2^{e2 + 1}"
        return f"MpReal(~{self.decimal(20)}, err{etxt}, bits={self.bits})"


# --------------------------------------------------------------------------
# pi as a public, precision-tiered cache
# --------------------------------------------------------------------------

class PiCache:
    """Monotone view of the shared pi source.

    ``bits``/``value`` describe the best approximation handed out so
    far; asking for less precision never recomputes (the underlying
    rational is reused and only re-rounded).  ``refinements`` counts
    actual binary-splitting runs, which tests use to assert monotonicity.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.bits = 0
        self.value: MpReal | None = None

    def get(self, bits: int) -> MpReal:
        _require_bits(bits)
        w = bits + 8
        man = pi_mantissa(w)
        value = MpReal(man, -w, Fraction(1, 1 << (w + 1)), bits)
        with self._lock:
            if bits > self.bits:
                self.bits = bits
                self.value = value
        return value

    @property
    def refinements(self) -> int:
        return _PI_SOURCE.refinements


PI_CACHE = PiCache()


def compute_pi(bits: int) -> MpReal:
    """pi with absolute error <= 2**-bits; deterministic in bits."""
    return PI_CACHE.get(bits)


# --------------------------------------------------------------------------
# fixed-point kernels (integers at scale 2**-w, error reported in ulps)
# --------------------------------------------------------------------------

def fx_sin(X: int, w: int) -> tuple[int, int]:
    """sin(X * 2**-w) in units of 2**-w, for |X * 2**-w| <= 3.3.

    Returns (value_units, err_ulps).  The ulp bound is deliberately
    loose; the kernel is validated against an exact Taylor oracle.
    """
    sign = -1 if X < 0 else 1
    X = abs(X)
    xx = (X * X) >> w
    term = X
    total = X
    i = 1
    while term:
        term = (term * xx) // (((2 * i) * (2 * i + 1)) << w)
        total += -term if (i & 1) else term
        i += 1
    return sign * total, 8 * i + 16


def fx_cos(X: int, w: int) -> tuple[int, int]:
    """cos(X * 2**-w) in units of 2**-w, for |X * 2**-w| <= 3.3."""
    X = abs(X)
    xx = (X * X) >> w
    term = 1 << w
    total = term
    i = 1
    while term:
        term = (term * xx) // (((2 * i - 1) * (2 * i)) << w)
        total += -term if (i & 1) else term
        i += 1
    return total, 8 * i + 16


def fx_atanh(T: int, w: int) -> tuple[int, int]:
    """atanh(T * 2**-w) in units of 2**-w, for 0 <= T * 2**-w <= 0.4."""
    tt = (T * T) >> w
    p = T
    total = T
    i = 1
    while p:
        p = (p * tt) >> w
        total += p // (2 * i + 1)
        i += 1
    return total, 4 * i + 8


def fx_exp_small(R: int, w: int) -> tuple[int, int]:
    """exp(R * 2**-w) in units of 2**-w, for |R * 2**-w| <= 0.4."""
    term = R
    total = (1 << w) + R
    i = 2
    while term:
        term = round_div(term * R, i << w)
        total += term
        i += 1
    return total, 4 * i + 8


def fx_ln_int(n: int, w: int) -> tuple[int, int]:
    """ln(n) in units of 2**-w for integer n >= 1.

    Writes n = 2**(b-1) * (n / 2**(b-1)) and uses
    ln m = 2*atanh((m - h)/(m + h)) with h the leading power of two;
    the atanh argument is below 1/3, so the series is short.
    """
    if n == 1:
        return 0, 1
    b = n.bit_length()
    half = 1 << (b - 1)
    T = round_div((n - half) << w, n + half)
    at, e1 = fx_atanh(T, w)
    return 2 * at + (b - 1) * ln2_mantissa(w), 2 * e1 + b + 8


# --------------------------------------------------------------------------
# argument reduction and sine
# --------------------------------------------------------------------------

def reduce_fixed(n: int, w: int) -> tuple[int, int, int]:
    """n = k*pi + r for integer n >= 1: returns (k, R, err_ulps).

    R is r in units of 2**-w with |R*2**-w - r| <= err_ulps * 2**-w and
    r in (-pi/2, pi/2).  k = round(n/pi) is certified: the rounding is
    accepted only when the uncertainty of the rational proxy stays a
    factor 2 clear of the nearest half-integer, escalating the proxy's
    precision otherwise (n/pi is never exactly a half-integer).
    """
    wk = w
    while True:
        P = pi_mantissa(wk)
        N = n << wk
        r0 = N % P
        if abs(2 * r0 - P) << wk > 4 * n * P:
            k = round_div(N, P)
            break
        wk *= 2
    P = pi_mantissa(w)
    R = (n << w) - k * P
    return k, R, (k >> 1) + 2


def reduce_mod_pi(n: int, bits: int) -> tuple[int, MpReal]:
    """n = k*pi + r with r in (-pi/2, pi/2] and err(r) <= 2**-bits.

    Working precision is bits + ceil(log2 n) + 32: the subtraction
    n - k*pi cancels about log2 n leading bits.
    """
    _require_bits(bits)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"reduce_mod_pi requires an integer n >= 1, got {n!r}")
    w = bits + clog2(max(n, 2)) + 32
    if w > MAX_BITS:
        raise ResourceLimitError(
            f"reduction of n={n} at {bits} bits needs {w} working bits (max {MAX_BITS})"
        )
    k, R, e = reduce_fixed(n, w)
    r = MpReal(R, -w, Fraction(e, 1 << w), bits).round_to(bits)
    return k, r


def sin_int(n: int, bits: int) -> MpReal:
    """sin(n) for integer n >= 1 with absolute error <= 2**-bits.

    Computed as (-1)**k * sin(r) from the reduction n = k*pi + r.
    """
    _require_bits(bits)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"sin_int requires an integer n >= 1, got {n!r}")
    w = bits + clog2(max(n, 2)) + 40
    if w > MAX_BITS:
        raise ResourceLimitError(
            f"sin({n}) at {bits} bits needs {w} working bits (max {MAX_BITS})"
        )
    k, R, e_red = reduce_fixed(n, w)
    S, e_sin = fx_sin(R, w)
    if k & 1:
        S = -S
    err = Fraction(e_red + e_sin + 1, 1 << w)
    return MpReal(S, -w, err, bits).round_to(bits)


def _pi_upper_64() -> Fraction:
    return Fraction(pi_mantissa(64) + 1, 1 << 64)


def _to_fixed(x: MpReal, w: int) -> tuple[int, int]:
    """(units at 2**-w, conversion err in ulps)."""
    shift = w + x.exp
    if shift >= 0:
        return x.man << shift, 0
    return round_div(x.man, 1 << -shift), 1


def sin_mp(x: MpReal, bits: int) -> MpReal:
    """sin(x) for |x| <= pi (callers reduce first); error <= 2**-bits + err(x)."""
    _require_bits(bits)
    if abs(x.center()) - x.err > _pi_upper_64():
        raise DomainError("sin_mp requires |x| <= pi; reduce the argument first")
    if x.man == 0 and x.err == 0:
        return MpReal(0, 0, _ZERO, bits)
    w = bits + 24
    X, e_c = _to_fixed(x, w)
    S, e_s = fx_sin(X, w)
    err = x.err + Fraction(e_c + e_s + 1, 1 << w)
    return MpReal(S, -w, err, bits).round_to(bits)


def cos_mp(x: MpReal, bits: int) -> MpReal:
    """cos(x) for |x| <= pi; cos_mp(exact 0) is exactly 1."""
    _require_bits(bits)
    if abs(x.center()) - x.err > _pi_upper_64():
        raise DomainError("cos_mp requires |x| <= pi; reduce the argument first")
    if x.man == 0 and x.err == 0:
        return MpReal(1, 0, _ZERO, bits)
    w = bits + 24
    X, e_c = _to_fixed(x, w)
    C, e_s = fx_cos(X, w)
    err = x.err + Fraction(e_c + e_s + 1, 1 << w)
    return MpReal(C, -w, err, bits).round_to(bits)


def _reduce_real(x: MpReal, w: int) -> tuple[int, int, int]:
    """Center of x written as k*pi + r: (k, R at 2**-w, err_ulps).

    Same certification idea as reduce_fixed, but for a dyadic center.
    The ball's own err is NOT included in err_ulps; callers add it.
    """
    c_num, c_den_bits = x.man, max(0, -x.exp)
    if x.exp > 0:
        c_num <<= x.exp
    mag = abs(c_num) >> c_den_bits
    wq = w + clog2(mag + 2) + 16
    while True:
        P = pi_mantissa(wq)
        den = P << c_den_bits
        num = c_num << wq
        r0 = num % den
        bound = 4 * (mag + 2) * den
        if abs(2 * r0 - den) << (wq - w) > bound:
            k = round_div(num, den)
            break
        wq *= 2
    P = pi_mantissa(wq)
    rest = (c_num << wq) - k * (P << c_den_bits)
    R = round_div(rest, 1 << (wq - w + c_den_bits))
    return k, R, (abs(k) >> 4) + 4


def sin_reduced(x: MpReal, bits: int) -> MpReal:
    """sin(x) for arbitrary finite x, with internal reduction mod pi."""
    _require_bits(bits)
    if abs(x.center()) + x.err <= Fraction(3):
        return sin_mp(x, bits)
    w = bits + 32 + clog2(int(abs(x.center())) + 2)
    k, R, e_r = _reduce_real(x, w)
    S, e_s = fx_sin(R, w)
    if k & 1:
        S = -S
    err = x.err + Fraction(e_r + e_s + 1, 1 << w)
    return MpReal(S, -w, err, bits).round_to(bits)


def cos_reduced(x: MpReal, bits: int) -> MpReal:
    """cos(x) for arbitrary finite x, with internal reduction mod pi."""
    _require_bits(bits)
    if abs(x.center()) + x.err <= Fraction(3):
        return cos_mp(x, bits)
    w = bits + 32 + clog2(int(abs(x.center())) + 2)
    k, R, e_r = _reduce_real(x, w)
    C, e_s = fx_cos(R, w)
    if k & 1:
        C = -C
    err = x.err + Fraction(e_r + e_s + 1, 1 << w)
    return MpReal(C, -w, err, bits).round_to(bits)


# --------------------------------------------------------------------------
# decimal rendering
# --------------------------------------------------------------------------

def exact_decimal(value: Fraction) -> str:
    """Exact decimal expansion; the denominator must divide some 10**d."""
    den = value.denominator
    two = five = 0
    while den % 2 == 0:
        den //= 2
        two += 1
    while den % 5 == 0:
        den //= 5
        five += 1
    if den != 1:
        raise DomainError("value has no finite decimal expansion")
    d = max(two, five)
    units = value.numerator * 10 ** d // value.denominator
    return _format_units(units, d)


def _round_units(value: Fraction, d: int) -> int:
    return round_div(value.numerator * 10 ** d, value.denominator)


def _format_units(units: int, d: int) -> str:
    sign = "-" if units < 0 else ""
    units = abs(units)
    if d == 0:
        return f"{sign}{units}"
    ip, fp = divmod(units, 10 ** d)
    text = f"{sign}{ip}.{fp:0{d}d}".rstrip("0")
    return text + "0" if text.endswith(".") else text


def guaranteed_decimal(value: Fraction, err: Fraction,
                       max_digits: int | None = None) -> str:
    """Decimal string showing only digits guaranteed by the error bound.

    Picks the largest digit count d (capped by max_digits) at which both
    interval endpoints round to the same d-decimal string, then prints
    that string.  With err = 0 the exact expansion is printed when it is
    finite and within the cap.
    """
    if err == 0:
        try:
            text = exact_decimal(value)
        except DomainError:
            text = None
        if text is not None:
            frac_digits = len(text.partition(".")[2])
            if max_digits is None or frac_digits <= max_digits:
                return text
        d = max_digits if max_digits is not None else 64
        return _format_units(_round_units(value, d), d)
    wide = 2 * err
    d = 0
    while d < 20000 and Fraction(1, 10 ** (d + 1)) > wide:
        d += 1
    if max_digits is not None:
        d = min(d, max_digits)
    while d >= 0:
        lo = _round_units(value - err, d)
        hi = _round_units(value + err, d)
        if lo == hi:
            return _format_units(lo, d)
        d -= 1
    return _format_units(_round_units(value, 0), 0)
