"""Mumford arithmetic on genus-2 Jacobians over prime fields.

Divisor classes on y^2 = f(x) with f monic of degree 5 are written in
Mumford form (u, v): u monic of degree <= 2, deg v < deg u, and
u | f - v^2.  Cantor's composition-and-reduction algorithm realizes the
group law; combined with the group order from the zeta function this
recovers the abstract structure of J(F_p) by order probing on random
classes plus the exact 2-rank read off the factorization type of f.

Degree-6 models are handled by passing to an odd-degree model: move a
rational Weierstrass point to infinity (x = a + 1/z) when the sextic has
a root a in F_p, then rescale to a monic quintic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm, prod

import sympy
from sympy.ntheory import sqrt_mod

from ..exact import validate_invariants
from .curve import GenusTwoCurve, curve_lpoly, good_prime
from .torsion import two_torsion_count

# ---------------------------------------------------------------------------
# dense polynomials over F_p (ascending coefficient tuples, trimmed)
# ---------------------------------------------------------------------------


def _trim(f: list[int]) -> tuple[int, ...]:
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def _deg(f) -> int:
    return len(f) - 1


def _add(f, g, p: int) -> tuple[int, ...]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _neg(f, p: int) -> tuple[int, ...]:
    return tuple((p - c) % p for c in f)


def _sub(f, g, p: int) -> tuple[int, ...]:
    return _add(f, _neg(g, p), p)


def _mul(f, g, p: int) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _divmod(f, g, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv = pow(g[-1], -1, p)
    for i in range(len(rem) - len(g), -1, -1):
        c = rem[i + len(g) - 1] * inv % p
        if c:
            q[i] = c
            for j, b in enumerate(g):
                rem[i + j] = (rem[i + j] - c * b) % p
    return _trim(q), _trim(rem)


def _monic(f, p: int) -> tuple[int, ...]:
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def _gcdext(f, g, p: int):
    """(d, s, t) with s f + t g = d and d monic (or zero)."""
    r0, r1 = tuple(f), tuple(g)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], -1, p)
    scale = (inv,)
    return _monic(r0, p), _mul(scale, s0, p), _mul(scale, t0, p)


def _eval(f, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# Mumford representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MumfordDivisor:
    """Reduced Mumford pair (u, v) over F_p, coefficients ascending."""

    p: int
    u: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.u == (1,)


def identity_divisor(p: int) -> MumfordDivisor:
    return MumfordDivisor(p, (1,), ())


def mumford_divisor(f5, p: int, u, v) -> MumfordDivisor:
    """Validated Mumford divisor on y^2 = f5(x), f5 monic quintic mod p."""
    u = _trim([c % p for c in u])
    v = _trim([c % p for c in v])
    if not u or u[-1] != 1 or _deg(u) > 2:
        raise ValueError("u must be monic of degree <= 2")
    if _deg(v) >= _deg(u):
        raise ValueError("v must have degree < deg u")
    _, rem = _divmod(_sub(tuple(f5), _mul(v, v, p), p), u, p)
    if rem:
        raise ValueError("u does not divide f - v^2")
    return MumfordDivisor(p, u, v)


def divisor_from_point(f5, p: int, x: int, y: int) -> MumfordDivisor:
    """The class of the affine point (x, y) minus infinity."""
    x, y = x % p, y % p
    if y * y % p != _eval(f5, x, p):
        raise ValueError(f"({x}, {y}) is not on the curve mod {p}")
    return MumfordDivisor(p, ((p - x) % p, 1), (y,) if y else ())


# ---------------------------------------------------------------------------
# Cantor composition and reduction
# ---------------------------------------------------------------------------


def cantor_add(
    d1: MumfordDivisor, d2: MumfordDivisor, f5
) -> MumfordDivisor:
    """Sum of two divisor classes on y^2 = f5(x)."""
    if d1.p != d2.p:
        raise ValueError("divisors live over different prime fields")
    p = d1.p
    f = tuple(c % p for c in f5)
    u1, v1, u2, v2 = d1.u, d1.v, d2.u, d2.v

    g1, e1, e2 = _gcdext(u1, u2, p)
    d, c1, c2 = _gcdext(g1, _add(v1, v2, p), p)
    # s1 u1 + s2 u2 + s3 (v1 + v2) = d with s1 = c1 e1 etc.
    u, rem = _divmod(_mul(u1, u2, p), _mul(d, d, p), p)
    assert not rem
    num = _add(
        _mul(_mul(c1, e1, p), _mul(u1, v2, p), p),
        _add(
            _mul(_mul(c1, e2, p), _mul(u2, v1, p), p),
            _mul(c2, _add(_mul(v1, v2, p), f, p), p),
            p,
        ),
        p,
    )
    q, rem = _divmod(num, d, p)
    assert not rem
    v = _mod_poly(q, u, p)

    while _deg(u) > 2:
        u_next, rem = _divmod(_sub(f, _mul(v, v, p), p), u, p)
        assert not rem
        u_next = _monic(u_next, p)
        v = _neg(_mod_poly(v, u_next, p), p)
        u = u_next
    return MumfordDivisor(p, u, v)


def _mod_poly(f, g, p: int) -> tuple[int, ...]:
    return _divmod(f, g, p)[1]


def cantor_neg(d: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(d.p, d.u, _neg(d.v, d.p))


def cantor_mul(n: int, d: MumfordDivisor, f5) -> MumfordDivisor:
    """n-th multiple of a divisor class (n may be negative)."""
    if n < 0:
        return cantor_mul(-n, cantor_neg(d), f5)
    acc = identity_divisor(d.p)
    sq = d
    while n:
        if n & 1:
            acc = cantor_add(acc, sq, f5)
        n >>= 1
        if n:
            sq = cantor_add(sq, sq, f5)
    return acc


def divisor_order(d: MumfordDivisor, f5, group_order: int) -> int:
    """Exact order of the class, given a multiple of it (the group order)."""
    if not cantor_mul(group_order, d, f5).is_identity:
        raise ValueError("group_order does not annihilate the divisor")
    order = group_order
    for ell in sympy.factorint(group_order):
        ell = int(ell)
        while order % ell == 0 and cantor_mul(order // ell, d, f5).is_identity:
            order //= ell
    return order


# ---------------------------------------------------------------------------
# odd-degree models and random classes
# ---------------------------------------------------------------------------


def _taylor_coeffs(coeffs, a: int, p: int) -> list[int]:
    """Coefficients t_k of f(a + w) = sum t_k w^k, by synthetic division."""
    work = [c % p for c in reversed(coeffs)]
    out = []
    while work:
        acc = 0
        for i in range(len(work)):
            acc = (acc * a + work[i]) % p
            work[i] = acc
        out.append(work.pop())
    return out


def odd_degree_model(curve: GenusTwoCurve, p: int):
    """A monic quintic F_p-model of the curve, or None.

    Degree-5 reductions rescale to a monic model directly; degree-6
    reductions need a rational Weierstrass point, i.e. a root a of the
    sextic mod p, which x -> a + 1/z sends to infinity.  Returns the
    quintic's six coefficients ascending (last one 1), or None when the
    sextic has no root in F_p.
    """
    if not good_prime(curve, p):
        raise ValueError(f"p = {p} is not a good prime for this curve")
    c = [v % p for v in curve.coeffs]
    if c[6] == 0:
        quintic = c[:6]
    else:
        for a in range(p):
            if _eval(tuple(c), a, p) == 0:
                break
        else:
            return None
        taylor = _taylor_coeffs(c, a, p)
        assert taylor[0] == 0 and taylor[1] != 0
        quintic = [taylor[6 - j] for j in range(6)]
    # rescale x -> x / lead, y -> y / lead^2 to make the quintic monic
    lead = quintic[5]
    model = tuple(quintic[i] * pow(lead, 4 - i, p) % p for i in range(6))
    assert model[5] == 1
    return model


def random_divisor(f5, p: int, rng: random.Random) -> MumfordDivisor:
    """A pseudorandom divisor class: sum of two random affine points."""

    def point() -> MumfordDivisor:
        while True:
            x = rng.randrange(p)
            y = sqrt_mod(_eval(f5, x, p), p)
            if y is not None:
                return divisor_from_point(f5, p, x, rng.choice((y, p - y)))

    return cantor_add(point(), point(), f5)


# ---------------------------------------------------------------------------
# group structure of J(F_p)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class JacobianGroup:
    """Order, invariant factors (ascending chain), and 2-rank of J(F_p).

    ``invariants`` is None when no odd-degree model exists mod p (sextic
    with no F_p-root), in which case only the order and the 2-rank are
    reported.
    """

    p: int
    order: int
    invariants: tuple[int, ...] | None
    two_rank: int


def _factor_degrees(curve: GenusTwoCurve, p: int) -> list[int]:
    x = sympy.Symbol("x")
    f = sum(int(c % p) * x**i for i, c in enumerate(curve.coeffs))
    poly = sympy.Poly(f, x, modulus=p)
    return [int(g.degree()) for g, _ in poly.factor_list()[1]]


def _group_invariants(
    order: int, exponent: int, two_rank: int
) -> tuple[int, ...]:
    """Invariant factors from order, probed exponent, and exact 2-rank.

    For odd primes the rank is taken minimal given the exponent; this is
    the only structure consistent with the probe whenever the exponent is
    correct.  Inconsistencies raise ValueError (a sign the randomized
    probe missed a component; rerun with a different seed).
    """
    if order == 1:
        return ()
    parts_by_prime: dict[int, list[int]] = {}
    for ell, tot in sorted(sympy.factorint(order).items()):
        ell, tot = int(ell), int(tot)
        e = 0
        m = exponent
        while m % ell == 0:
            m //= ell
            e += 1
        if e == 0:
            raise ValueError(f"exponent probe found no {ell}-part")
        rank = two_rank if ell == 2 else -(-tot // e)
        if not 1 <= rank <= tot or e > tot - rank + 1 or tot > rank * e:
            raise ValueError(
                f"probed exponent {exponent} is inconsistent with "
                f"order {order} at ell = {ell}"
            )
        parts = []
        rem = tot
        for s in range(rank):
            take = min(e, rem - (rank - 1 - s))
            parts.append(take)
            rem -= take
        assert rem == 0 and parts[0] == e and min(parts) >= 1
        parts_by_prime[ell] = sorted(parts)
    k = max(len(v) for v in parts_by_prime.values())
    ds = []
    for i in range(k):
        d = 1
        for ell, parts in parts_by_prime.items():
            padded = [0] * (k - len(parts)) + parts
            d *= ell ** padded[i]
        ds.append(d)
    assert prod(ds) == order
    return validate_invariants(ds)


def jacobian_group_mod_p(
    curve: GenusTwoCurve, p: int, seed: int = 0
) -> JacobianGroup:
    """Structure of J(F_p) at a good prime p.

    The order comes from the zeta function, the 2-rank from the
    factorization type of f mod p, and the exponent from order probing on
    16 pseudorandom classes (seeded, hence deterministic).
    """
    order = curve_lpoly(curve, p).point_count()
    two_rank = two_torsion_count(_factor_degrees(curve, p)).bit_length() - 1
    f5 = odd_degree_model(curve, p)
    if f5 is None:
        return JacobianGroup(p, order, None, two_rank)
    rng = random.Random(seed)
    exponent = 1
    for _ in range(16):
        d = random_divisor(f5, p, rng)
        exponent = lcm(exponent, divisor_order(d, f5, order))
        if exponent == order:
            break
    invariants = _group_invariants(order, exponent, two_rank)
    return JacobianGroup(p, order, invariants, two_rank)
