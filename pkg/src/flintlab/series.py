"""Error-bounded partial sums of the sine-power series family.

The family under study is

    S_s(k) = sum_{n=1}^{k}  G(n)^(2s) / (|sin n|^u * n^(v + 2s)),

with the classical series at s = 0, u = 2, v = 3.  Numerators are exact
big integers; the only approximate object per term is sin n.

Determinism is structural, not incidental: every term is rounded to a
*fixed* scale 2**-(bits + 80) chosen independently of the summation
range, and the accumulator is the exact integer sum of those rounded
units.  Integer addition is associative, so any chunking, threading or
checkpoint split reproduces identical bits; the error budget is likewise
an exact integer count of the same units.  (A per-term precision that
grew with the target k would silently break resume-versus-fresh
bit-identity, which is why the scale must not depend on k.)

|sin n|^u uses the absolute value so that every member of the family,
including odd u, has positive terms and monotone partial sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, TextIO

from .combinatorics import g_value
from .errors import CheckpointMismatchError, DomainError, ResourceLimitError, UsageError
from .mpreal import (
    MAX_BITS,
    MpReal,
    clog2,
    exact_decimal,
    fx_exp_small,
    fx_ln_int,
    fx_sin,
    ln2_mantissa,
    reduce_fixed,
    round_div,
)

__all__ = [
    "EquivalenceRow",
    "PartialSumResult",
    "SeriesSpec",
    "equivalence_experiment",
    "load_checkpoint",
    "partial_sum",
    "save_checkpoint",
    "term",
    "write_series_csv",
]


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of one family member: depth s, sine power u, n-power v."""

    s: int = 0
    u: int = 2
    v: int | float = 3
    bits: int = 128

    def __post_init__(self) -> None:
        if not isinstance(self.s, int) or self.s < 0:
            raise DomainError(f"s must be an integer >= 0, got {self.s!r}")
        if not isinstance(self.u, int) or self.u < 1:
            raise DomainError(f"u must be an integer >= 1, got {self.u!r}")
        if isinstance(self.v, bool) or not isinstance(self.v, (int, float)):
            raise DomainError(f"v must be a real number, got {self.v!r}")
        if not self.v > 0:
            raise DomainError(f"v must be positive, got {self.v!r}")
        if isinstance(self.v, float) and self.v.is_integer():
            object.__setattr__(self, "v", int(self.v))
        if not isinstance(self.bits, int) or self.bits < 8:
            raise DomainError(f"bits must be an integer >= 8, got {self.bits!r}")
        if self.bits > MAX_BITS:
            raise ResourceLimitError(f"bits={self.bits} exceeds maximum {MAX_BITS}")

    @property
    def acc_scale(self) -> int:
        """Accumulator scale: units of 2**-(bits + 80)."""
        return self.bits + 80


def _pow_frac_units(n: int, frac: Fraction, w: int) -> tuple[int, int, int]:
    """n**frac for 0 < frac < 1 as (units at 2**(q-w), err_ulps, q)."""
    ln_n, e_ln = fx_ln_int(n, w)
    arg = round_div(ln_n * frac.numerator, frac.denominator)
    l2 = ln2_mantissa(w)
    q = round_div(arg, l2)
    rem = arg - q * l2
    e_pow, e_exp = fx_exp_small(rem, w)
    # argument error (ln + rounding + q half-ulps of ln2) passes through exp <= 2
    err = e_exp + 2 * (e_ln + q + 4)
    return e_pow, err, q


def _term_units(n: int, spec: SeriesSpec) -> tuple[int, int]:
    """(T, e): term(n) = T * 2**-A with |error| <= e * 2**-A, A = acc_scale.

    Deterministic in (n, spec) alone.  The working precision starts high
    enough that the escalation loop is idle in practice, but it is
    there, and it never consults the surrounding summation context.
    """
    acc = spec.acc_scale
    num = g_value(n).value ** (2 * spec.s)
    iv = int(spec.v)
    frac = Fraction(spec.v) - iv if not isinstance(spec.v, int) else Fraction(0)
    n_pow = n ** (iv + 2 * spec.s)
    w1 = acc + 48
    while True:
        w = w1 + clog2(max(n, 2))
        if w > MAX_BITS:
            raise ResourceLimitError(
                f"term(n={n}) escalated past the {MAX_BITS}-bit ceiling"
            )
        _, R, e_red = reduce_fixed(n, w)
        S, e_sin = fx_sin(R, w)
        m = abs(S)
        e_abs = e_red + e_sin + 1
        if m <= e_abs:
            w1 *= 2
            continue
        if frac:
            p_units, p_err, q = _pow_frac_units(n, frac, w)
            if p_units <= p_err:
                w1 *= 2
                continue
        else:
            p_units, p_err, q = 1, 0, 0
        shift = acc + spec.u * w + (w - q if frac else 0)
        den_c = (m ** spec.u) * n_pow * p_units
        T = round_div(num << shift, den_c)
        den_lo = ((m - e_abs) ** spec.u) * n_pow * (p_units - p_err if frac else 1)
        den_hi = ((m + e_abs) ** spec.u) * n_pow * (p_units + p_err if frac else 1)
        width = Fraction(num << shift, den_lo) - Fraction(num << shift, den_hi)
        e_units = -(-width.numerator // width.denominator) + 2
        if e_units <= 1 << 14:
            return T, e_units
        w1 *= 2


def term(n: int, spec: SeriesSpec) -> MpReal:
    """One positive term G(n)^(2s) / (|sin n|^u * n^(v+2s)), error-bounded."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"term requires an integer n >= 1, got {n!r}")
    units, err = _term_units(n, spec)
    acc = spec.acc_scale
    return MpReal(units, -acc, Fraction(err, 1 << acc), spec.bits)


@dataclass(frozen=True)
class PartialSumResult:
    """Sum over n in [1, k] held as exact integer units of 2**-acc_scale."""

    spec: SeriesSpec
    k: int
    units: int
    err_units: int

    @property
    def value(self) -> MpReal:
        acc = self.spec.acc_scale
        return MpReal(self.units, -acc, self.err, self.spec.bits)

    @property
    def err(self) -> Fraction:
        return Fraction(self.err_units, 1 << self.spec.acc_scale)

    def value_fraction(self) -> Fraction:
        return Fraction(self.units, 1 << self.spec.acc_scale)


def partial_sum(k: int, spec: SeriesSpec,
                checkpoint: PartialSumResult | None = None) -> PartialSumResult:
    """Sum of term(n, spec) for n in (checkpoint.k, k], ascending.

    Resuming from a checkpoint is bit-identical to a fresh run: the
    accumulator is an exact integer and per-term units are independent
    of where the range was split.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"partial_sum requires an integer k >= 1, got {k!r}")
    start = 1
    units = 0
    err_units = 0
    if checkpoint is not None:
        if checkpoint.spec != spec:
            raise CheckpointMismatchError(
                f"checkpoint parameters {checkpoint.spec} do not match requested {spec}"
            )
        if checkpoint.k >= k:
            raise CheckpointMismatchError(
                f"checkpoint already covers k={checkpoint.k}, requested k={k}"
            )
        start = checkpoint.k + 1
        units = checkpoint.units
        err_units = checkpoint.err_units
    for n in range(start, k + 1):
        t, e = _term_units(n, spec)
        units += t
        err_units += e
    return PartialSumResult(spec, k, units, err_units)


# --------------------------------------------------------------------------
# checkpoint files
# --------------------------------------------------------------------------

def save_checkpoint(result: PartialSumResult, path: str) -> None:
    acc = result.spec.acc_scale
    doc = {
        "version": 1,
        "spec": {
            "s": result.spec.s,
            "u": result.spec.u,
            "v": result.spec.v,
            "bits": result.spec.bits,
        },
        "k": result.k,
        "value": exact_decimal(Fraction(result.units, 1 << acc)),
        "err": exact_decimal(Fraction(result.err_units, 1 << acc)),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _decimal_to_units(text: str, acc: int, what: str) -> int:
    try:
        frac = Fraction(Decimal(text))
    except Exception as exc:
        raise CheckpointMismatchError(f"checkpoint {what} is not a decimal: {text!r}") from exc
    scaled = frac * (1 << acc)
    if scaled.denominator != 1:
        raise CheckpointMismatchError(
            f"checkpoint {what} does not sit on the 2**-{acc} grid"
        )
    return scaled.numerator


def load_checkpoint(path: str) -> PartialSumResult:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read checkpoint {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise CheckpointMismatchError(
            f"checkpoint {path}: unsupported version {doc.get('version')!r}"
        )
    try:
        raw = doc["spec"]
        spec = SeriesSpec(s=raw["s"], u=raw["u"], v=raw["v"], bits=raw["bits"])
        k = doc["k"]
        value_text = doc["value"]
        err_text = doc["err"]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"checkpoint {path} is missing fields: {exc}") from exc
    if not isinstance(k, int) or k < 1:
        raise CheckpointMismatchError(f"checkpoint {path}: bad k={k!r}")
    acc = spec.acc_scale
    units = _decimal_to_units(value_text, acc, "value")
    err_units = _decimal_to_units(err_text, acc, "err")
    if units < 0 or err_units < 0:
        raise CheckpointMismatchError(f"checkpoint {path}: negative accumulator")
    return PartialSumResult(spec, k, units, err_units)


# --------------------------------------------------------------------------
# the s-family comparison
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceRow:
    s: int
    value: MpReal
    err: Fraction
    delta_vs_s0: Fraction


def equivalence_experiment(k: int, s_max: int, bits: int = 128) -> list[EquivalenceRow]:
    """Partial sums S_s(k) for s = 0..s_max with exact |S_s - S_0| deltas.

    With G(n) = n the summands are algebraically identical for every s,
    so the deltas measure pure rounding; they are bounded by
    err_s + err_0 whenever both error budgets are honest.
    """
    if k < 1 or s_max < 1:
        raise DomainError(f"need k >= 1 and s_max >= 1, got k={k}, s_max={s_max}")
    results = [partial_sum(k, SeriesSpec(s=s, u=2, v=3, bits=bits))
               for s in range(s_max + 1)]
    base = results[0]
    rows = []
    for r in results:
        delta = Fraction(abs(r.units - base.units), 1 << r.spec.acc_scale)
        rows.append(EquivalenceRow(r.spec.s, r.value, r.err, delta))
    return rows


def _sci(x: Fraction, digits: int = 3) -> str:
    """Short scientific rendering of a non-negative fraction."""
    if x == 0:
        return "0"
    e10 = 0
    y = x
    while y >= 10:
        y /= 10
        e10 += 1
    while y < 1:
        y *= 10
        e10 -= 1
    scaled = round_div(y.numerator * 10 ** (digits - 1), y.denominator)
    mant = f"{scaled / 10 ** (digits - 1):.{digits - 1}f}"
    return f"{mant}e{e10:+03d}"


def write_series_csv(results: Iterable[PartialSumResult], stream: TextIO) -> None:
    """Columns: k, s, u, v, value, err."""
    import csv as _csv

    writer = _csv.writer(stream)
    writer.writerow(["k", "s", "u", "v", "value", "err"])
    for r in results:
        writer.writerow([
            r.k, r.spec.s, r.spec.u, r.spec.v,
            r.value.decimal(), _sci(r.err),
        ])
