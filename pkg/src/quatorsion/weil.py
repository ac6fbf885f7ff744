"""Weil polynomials of abelian surfaces over finite fields.

An isogeny class of abelian surfaces over F_q has characteristic
polynomial of Frobenius

    f(T) = T^4 + a1 T^3 + a2 T^2 + q a1 T + q^2,

all of whose complex roots have absolute value sqrt(q).  Substituting
x = T + q/T turns that condition into h(x) = x^2 + a1 x + (a2 - 2q)
having both real roots in [-2 sqrt(q), 2 sqrt(q)], which reduces to four
exact integer inequalities.  The point count of any surface in the class
is #A(F_q) = f(1).

Isogeny classes are named by LMFDB-style labels "2.q.c1_c2" whose
coefficient strings encode a1 and a2 in base 26 (a = 0, ..., z = 25,
with a leading 'a' before further letters marking negation, so
"ac" = -2).

Not every valid f is the polynomial of an actual surface: Honda-Tate
theory excludes a handful of pairs over non-prime fields.  The engine
flags admissibility against packaged per-q class lists (regenerable with
scripts/gen_av_fixtures.py) rather than re-deriving it at runtime; a
purely local sufficient condition (ordinary classes are always
admissible) is provided for sanity checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from sympy import factorint, primefactors

_FIXTURE_DIR = Path(__file__).parent / "fixtures" / "av"
SUPPORTED_Q = (2, 3, 4, 5, 7, 9)


def prime_power_base(q: int) -> tuple[int, int]:
    """The pair (p, n) with q = p^n; raises unless q is a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = {int(p): int(e) for p, e in factorint(q).items()}
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, n),) = factors.items()
    return p, n


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True, slots=True)
class WeilPoly2:
    """The degree-4 polynomial T^4 + a1 T^3 + a2 T^2 + q a1 T + q^2."""

    q: int
    a1: int
    a2: int

    def __post_init__(self) -> None:
        prime_power_base(self.q)

    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (1, self.a1, self.a2, self.q * self.a1, self.q**2)

    def point_count(self) -> int:
        """f(1) = #A(F_q) for any surface A in the class."""
        return 1 + self.a1 + self.a2 + self.q * self.a1 + self.q**2

    def is_ordinary(self) -> bool:
        p, _ = prime_power_base(self.q)
        return self.a2 % p != 0


@dataclass(frozen=True, slots=True)
class WeilPoly1:
    """The degree-2 polynomial T^2 + a T + q of an elliptic isogeny class."""

    q: int
    a: int

    def __post_init__(self) -> None:
        prime_power_base(self.q)
        if self.a**2 > 4 * self.q:
            raise ValueError(f"|{self.a}| exceeds 2 sqrt({self.q})")

    def point_count(self) -> int:
        return 1 + self.a + self.q

    def square(self) -> WeilPoly2:
        """The polynomial of E x E, (T^2 + aT + q)^2."""
        return WeilPoly2(self.q, 2 * self.a, self.a**2 + 2 * self.q)


@dataclass(frozen=True, slots=True)
class SurfaceClass:
    """One enumerated isogeny class with its admissibility flag."""

    poly: WeilPoly2
    label: str
    honda_tate_admissible: bool


def is_weil_valid(w: WeilPoly2) -> bool:
    """Whether every complex root of f has absolute value sqrt(q).

    Equivalently h(x) = x^2 + a1 x + (a2 - 2q) has both real roots in
    [-2 sqrt(q), 2 sqrt(q)]: real roots (nonnegative discriminant), the
    vertex within range, and h nonnegative at both endpoints.  All four
    conditions are exact in integers.
    """
    q, a1, a2 = w.q, w.a1, w.a2
    if a1 * a1 - 4 * (a2 - 2 * q) < 0:
        return False
    if a1 * a1 > 16 * q:
        return False
    edge = 2 * q + a2
    return edge >= 0 and edge * edge >= 4 * q * a1 * a1


# ---------------------------------------------------------------------------
# labels


def _letters_to_int(s: str, offset: int) -> int:
    if not s or any(not ("a" <= ch <= "z") for ch in s):
        bad = next((i for i, ch in enumerate(s) if not ("a" <= ch <= "z")), 0)
        raise ValueError(f"invalid coefficient letter at position {offset + bad}")
    if len(s) == 1:
        return ord(s) - ord("a")
    if s[0] == "a":
        magnitude = _letters_to_int(s[1:], offset + 1)
        if magnitude == 0:
            raise ValueError(f"negative zero at position {offset}")
        return -magnitude
    value = 0
    for ch in s:
        value = value * 26 + (ord(ch) - ord("a"))
    return value


def _int_to_letters(value: int) -> str:
    if value < 0:
        return "a" + _int_to_letters(-value)
    if value == 0:
        return "a"
    digits = []
    while value:
        value, digit = divmod(value, 26)
        digits.append(chr(ord("a") + digit))
    return "".join(reversed(digits))


def parse_label(s: str) -> WeilPoly2:
    """Decode an isogeny class label "2.q.c1_c2"."""
    parts = s.split(".")
    if len(parts) != 3:
        raise ValueError(f"expected three dot-separated parts in {s!r}")
    if parts[0] != "2":
        raise ValueError(f"unsupported dimension {parts[0]!r} at position 0")
    try:
        q = int(parts[1])
    except ValueError:
        raise ValueError(f"invalid field size at position 2 in {s!r}") from None
    prime_power_base(q)
    coeffs = parts[2].split("_")
    if len(coeffs) != 2:
        raise ValueError(
            f"expected two coefficient strings at position {len(parts[0]) + len(parts[1]) + 2}"
        )
    offset = len(parts[0]) + len(parts[1]) + 2
    a1 = _letters_to_int(coeffs[0], offset)
    a2 = _letters_to_int(coeffs[1], offset + len(coeffs[0]) + 1)
    return WeilPoly2(q, a1, a2)


def format_label(w: WeilPoly2) -> str:
    return f"2.{w.q}.{_int_to_letters(w.a1)}_{_int_to_letters(w.a2)}"


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _load_fixture(q: int) -> tuple[tuple[int, int], ...]:
    path = _FIXTURE_DIR / f"av_classes_q{q}.json"
    entries = json.loads(path.read_text())
    pairs = []
    for entry in entries:
        pair = (int(entry["a1"]), int(entry["a2"]))
        assert parse_label(entry["label"]) == WeilPoly2(q, *pair)
        pairs.append(pair)
    return tuple(pairs)


def local_admissible_guess(w: WeilPoly2) -> bool:
    """A sufficient condition for admissibility: ordinary classes exist.

    Honda-Tate theory never excludes an ordinary class (p not dividing
    a2); non-ordinary classes are reported False here even though most
    are admissible, so this is only a one-sided sanity check against the
    fixture lists.
    """
    return w.is_ordinary()


def enumerate_surfaces(q: int) -> list[SurfaceClass]:
    """All Weil-valid (a1, a2) over F_q with admissibility flags.

    Classes are ordered by (a1, a2).  The admissible sublist equals the
    packaged per-q class list.
    """
    if q not in SUPPORTED_Q:
        raise ValueError(f"q must be one of {SUPPORTED_Q}")
    admissible = set(_load_fixture(q))
    out = []
    for a1 in range(-math.isqrt(16 * q), math.isqrt(16 * q) + 1):
        for a2 in range(-2 * q, a1 * a1 // 4 + 2 * q + 1):
            w = WeilPoly2(q, a1, a2)
            if is_weil_valid(w):
                out.append(SurfaceClass(w, format_label(w), (a1, a2) in admissible))
    assert [s.poly for s in out if s.honda_tate_admissible] == [
        WeilPoly2(q, *pair) for pair in sorted(admissible)
    ]
    return out


# ---------------------------------------------------------------------------
# base change


def _power_sums(w: WeilPoly2, count: int) -> list[int]:
    """Power sums s_1..s_count of the roots, by Newton's identities."""
    e = [-w.a1, w.a2, -w.q * w.a1, w.q**2]
    sums: list[int] = []
    for k in range(1, count + 1):
        total = 0
        for i in range(1, min(k, 4) + 1):
            term = e[i - 1] * (sums[k - i - 1] if k > i else k)
            total += term if i % 2 else -term
        sums.append(total)
    return sums


def base_change(w: WeilPoly2, n: int) -> WeilPoly2:
    """The Weil polynomial over F_{q^n}, with roots the n-th powers.

    Computed exactly over Z via Newton power sums: the new power sums
    are s_{n k}, and the elementary symmetric functions are recovered by
    the inverse identities (all divisions exact).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return w
    sums = _power_sums(w, 4 * n)
    s = [sums[n * k - 1] for k in range(1, 5)]
    e: list[int] = []
    for k in range(1, 5):
        total = s[k - 1] if k % 2 else -s[k - 1]
        for i in range(1, k):
            term = e[i - 1] * s[k - i - 1]
            total += term if (k - i) % 2 else -term
        quotient, remainder = divmod(total, k)
        assert remainder == 0
        e.append(quotient)
    qn = w.q**n
    out = WeilPoly2(qn, -e[0], e[1])
    assert e[2] == -qn * out.a1 and e[3] == qn * qn
    return out


def geometric_split_analysis(
    w: WeilPoly2, nmax: int = 24
) -> tuple[int, int] | None:
    """The least n <= nmax with f over F_{q^n} a square (T^2 + aT + q^n)^2.

    Returns (n, a), or None when no base change in range is the square
    of an elliptic Weil polynomial — the class is then not geometrically
    isogenous to the square of an elliptic curve within the window.
    """
    if nmax < 1:
        raise ValueError("nmax must be a positive integer")
    for n in range(1, nmax + 1):
        b = base_change(w, n)
        if b.a1 % 2 == 0:
            a = b.a1 // 2
            if b.a2 == a * a + 2 * b.q:
                assert a * a <= 4 * b.q  # roots keep absolute value sqrt(q^n)
                return n, a
    return None


# ---------------------------------------------------------------------------
# torsion scans


def torsion_gcd_scan(
    q: int, ell: int, geometric_square_only: bool
) -> tuple[int, list[str]]:
    """Maximum gcd(f(1), ell^100) over admissible classes, with attainers.

    With ``geometric_square_only`` the scan is restricted to classes
    that become a square of an elliptic class over some F_{q^n}, n <= 24.
    Returns the maximum together with the labels attaining it.
    """
    if ell < 2:
        raise ValueError("ell must be at least 2")
    cap = ell**100
    best, attaining = 0, []
    for cls in enumerate_surfaces(q):
        if not cls.honda_tate_admissible:
            continue
        if geometric_square_only and geometric_split_analysis(cls.poly) is None:
            continue
        value = math.gcd(cls.poly.point_count(), cap)
        if value > best:
            best, attaining = value, [cls.label]
        elif value == best:
            attaining.append(cls.label)
    return best, attaining


def qm_prime_bound(q: int) -> set[int]:
    """Primes dividing (1 + a + q)^2 for some integer a with a^2 <= 4q.

    These are the possible prime orders of rational torsion points
    surviving into a quaternionic reduction over F_q, where the point
    count is the square of an elliptic one.
    """
    prime_power_base(q)
    out: set[int] = set()
    for a in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
        count = 1 + a + q
        assert count > 0
        out.update(int(p) for p in primefactors(count))
    return out
