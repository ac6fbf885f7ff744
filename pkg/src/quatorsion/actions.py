"""Finite dihedral subgroups of Aut(O) and their mod-N fixed points.

Every ring automorphism of an order O in a quaternion algebra B is
conjugation x |-> b^-1 x b by some b in B* normalising O (Skolem-Noether),
and b is determined up to Q*-multiples, so Aut(O) = N_{B*}(O)/Q*.  This
module represents such classes [b], assembles the dihedral subgroups
D1, D2, D3, D4, D6 of Aut(O) from explicit generator presentations,
and computes their fixed points on O/NO together with the associated
mod-2/mod-4 classification lemmas, the left-submodule lattice of O/lO,
the semidirect-product "enhanced" group law, and the polarization and
distinguished-subring arithmetic.

Generator presentations (O maximal):
  D1  <[b]>          with b^2 = m in Z, m != 1, m | disc(B)
  D2  <[i],[j]>      with i^2 = m, j^2 = n dividing disc(B), ij = -ji;
                     the third involution [ij] squares to -mn up to squares
  D4  <[1+i],[j]>    with i^2 = -1, j^2 = m | disc(B), ij = -ji
  D3  <[1+w],[j]>    with w^2 + w + 1 = 0, j^2 = m | disc(B), wj = j(-1-w)
  D6  <[1-w],[j]>    same data; [1-w] has norm 3, forcing 3 | disc(B)

Conjugation by a class acts on O/NO through an integer matrix in the
order basis; fixed subgroups are reported as abelian invariants, by
exhaustive enumeration for N <= 4 and through the Smith form of the
stacked (conjugation - identity) maps otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import isprime
from sympy.ntheory import factorint

from .exact import (
    fundamental_discriminant,
    rational_square_class,
    smith_diagonal,
    smith_invariants,
)
from .quat import (
    QuatElt,
    QuatOrder,
    _hnf_rows,
    _mat_inverse,
    discriminant,
    is_in_normalizer,
    is_maximal,
    order_from_json,
    order_to_json,
    primitive_in_order,
)

KINDS = ("D1", "D2", "D3", "D4", "D6")


# ---------------------------------------------------------------------------
# automorphism classes


@dataclass(frozen=True, slots=True)
class AutClass:
    """A class [b] in N_{B*}(O)/Q*, acting on O by x |-> b^-1 x b.

    The representative is primitive in the order basis with positive
    leading coordinate, so equal classes compare equal.
    """

    order: QuatOrder
    rep: QuatElt

    @classmethod
    def from_element(cls, order: QuatOrder, x: QuatElt) -> "AutClass":
        if x.is_zero():
            raise ValueError("the zero element has no class in B*/Q*")
        rep, coords = primitive_in_order(order, x)
        if next(c for c in coords if c) < 0:
            rep = -rep
        if not is_in_normalizer(order, rep):
            raise ValueError(f"{x} does not normalize the order")
        return cls(order, rep)

    def is_identity(self) -> bool:
        return self.rep.is_scalar()

    def conjugation_matrix(self, modulus: int | None = None) -> list[list[int]]:
        """Integer matrix of x |-> b^-1 x b on the order basis.

        Coordinate row vectors transform by right multiplication.
        """
        inv = self.rep.inverse()
        rows = []
        for e in self.order.basis:
            coords = self.order.coordinates(inv * e * self.rep)
            assert all(c.denominator == 1 for c in coords)  # rep normalizes
            row = [int(c) for c in coords]
            rows.append([v % modulus for v in row] if modulus else row)
        return rows

    def __mul__(self, other: "AutClass") -> "AutClass":
        if self.order != other.order:
            raise ValueError("classes act on different orders")
        return AutClass.from_element(self.order, self.rep * other.rep)


@dataclass(frozen=True, slots=True)
class DihedralAction:
    """A dihedral subgroup of Aut(O) with its presentation data.

    ``params`` holds (m,) for D1 (b^2 = m), (m, n) for D2 (i^2 = m,
    j^2 = n), and (m,) for D3/D4/D6 (the reflection square j^2 = m).
    """

    kind: str
    generators: tuple[AutClass, ...]
    params: tuple[int, ...]

    @property
    def order(self) -> QuatOrder:
        return self.generators[0].order


def _scalar_square(x: QuatElt, name: str) -> int:
    sq = x * x
    if not sq.is_scalar():
        raise ValueError(f"relation violated: {name}^2 must be an integer")
    value = sq.scalar_part()
    assert value.denominator == 1
    return int(value)


def _check_divides(m: int, disc: int, name: str) -> None:
    if m == 1:
        raise ValueError(f"relation violated: {name}^2 = 1 gives a trivial class")
    if disc % abs(m) != 0:
        raise ValueError(
            f"relation violated: {name}^2 = {m} does not divide disc(B) = {disc}"
        )


def build_dihedral_action(
    order: QuatOrder, kind: str, generators: Sequence[QuatElt]
) -> DihedralAction:
    """Assemble and validate a dihedral subgroup of Aut(O).

    Generators are primitivised before the relation checks, so any
    Q*-multiples of the canonical presentations are accepted: [b] for D1;
    pure anticommuting i, j for D2; 1+i and j for D4; 1+w (resp. 1-w)
    and j for D3 (resp. D6).  A violated relation raises ValueError
    naming the relation.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if not is_maximal(order):
        raise ValueError("dihedral actions are classified over maximal orders")
    disc = discriminant(order.algebra)
    classes = [AutClass.from_element(order, g) for g in generators]
    reps = [c.rep for c in classes]

    if kind == "D1":
        if len(reps) != 1:
            raise ValueError("D1 takes a single generator")
        (b,) = reps
        if b.is_scalar():
            raise ValueError("relation violated: the generator is a scalar")
        m = _scalar_square(b, "b")
        _check_divides(m, disc, "b")
        return DihedralAction(kind, tuple(classes), (m,))

    if len(reps) != 2:
        raise ValueError(f"{kind} takes two generators")

    if kind == "D2":
        u, v = reps
        m = _scalar_square(u, "i")
        n = _scalar_square(v, "j")
        _check_divides(m, disc, "i")
        _check_divides(n, disc, "j")
        if u * v != -(v * u):
            raise ValueError("relation violated: ij = -ji")
        return DihedralAction(kind, tuple(classes), (m, n))

    if kind == "D4":
        s, v = reps
        t = s.trd()
        if t == 0:
            raise ValueError("relation violated: the rotation must be of the form 1+i")
        i_elt = s.scale(2 / t) - order.algebra.one
        if i_elt * i_elt != order.algebra.element(-1):
            raise ValueError("relation violated: i^2 = -1")
        m = _scalar_square(v, "j")
        _check_divides(m, disc, "j")
        if i_elt * v != -(v * i_elt):
            raise ValueError("relation violated: ij = -ji")
        assert disc % 2 == 0  # nrd(1+i) = 2 normalizes, so 2 ramifies
        return DihedralAction(kind, tuple(classes), (m,))

    # D3 / D6: rotation 1+w (nrd 1, trd 1) or 1-w (nrd 3, trd 3).
    # The class [r] is sign-canonical; the relations need trd(r) > 0.
    r, v = reps
    if r.trd() < 0:
        r = -r
    omega = r - order.algebra.one if kind == "D3" else order.algebra.one - r
    if omega * omega + omega + order.algebra.one != order.algebra.element(0):
        raise ValueError("relation violated: w^2 + w + 1 = 0")
    m = _scalar_square(v, "j")
    _check_divides(m, disc, "j")
    if omega * v != v * (-order.algebra.one - omega):
        raise ValueError("relation violated: wj = j(-1-w)")
    if kind == "D6":
        assert disc % 3 == 0  # nrd(1-w) = 3 normalizes, so 3 ramifies
    return DihedralAction(kind, tuple(classes), (m,))


# ---------------------------------------------------------------------------
# fixed points on O/NO


def _generator_classes(action: DihedralAction | Iterable[AutClass]) -> tuple[AutClass, ...]:
    if isinstance(action, DihedralAction):
        return action.generators
    classes = tuple(action)
    if not classes:
        raise ValueError("at least one generator is required")
    return classes


def _vec_mat_mod(vec: Sequence[int], mat: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    return tuple(sum(vec[r] * mat[r][c] for r in range(4)) % n for c in range(4))


def _fixed_invariants_enumerate(mats: Sequence[Sequence[Sequence[int]]], n: int) -> list[int]:
    """Invariants of the common fixed subgroup of (Z/n)^4 by enumeration."""
    fixed = [
        vec
        for vec in itertools.product(range(n), repeat=4)
        if all(_vec_mat_mod(vec, mat, n) == vec for mat in mats)
    ]
    # the subgroup is L/nZ^4 for the lattice L spanned by lifts and nZ^4
    rows = [list(vec) for vec in fixed]
    rows += [[n if r == c else 0 for c in range(4)] for r in range(4)]
    basis = _hnf_rows(rows)
    assert len(basis) == 4
    inv = _mat_inverse([[Fraction(v) for v in row] for row in basis])
    rel = []
    for r in range(4):
        row = []
        for c in range(4):
            entry = n * inv[r][c]
            assert entry.denominator == 1  # nZ^4 lies inside L
            row.append(int(entry))
        rel.append(row)
    return list(smith_invariants(rel))


def _fixed_invariants_smith(mats: Sequence[Sequence[Sequence[int]]], n: int) -> list[int]:
    """Invariants via the Smith form of the stacked (M - 1) maps over Z.

    Writing the stack A = U D V with U, V unimodular, the kernel of
    x |-> xA on (Z/n)^4 is the direct sum of Z/gcd(d_i, n) over the four
    diagonal entries of D (zeros included, with gcd(0, n) = n).
    """
    stacked = [
        [mat[r][c] - (1 if r == c else 0) for mat in mats for c in range(4)]
        for r in range(4)
    ]
    diag = [d for d in smith_diagonal(stacked) if d != 0]
    assert len(diag) <= 4
    diag += [0] * (4 - len(diag))
    return [g for d in diag if (g := math.gcd(d, n)) > 1]


def residue_fixed_subgroup(
    action: DihedralAction | Iterable[AutClass], modulus: int
) -> list[int]:
    """Abelian invariants of {x in O/NO : g^-1 x g = x for all generators}.

    Accepts a DihedralAction or any iterable of AutClass generators (for
    cyclic subgroups such as <[1+i]>).  For N <= 4 the kernel is found by
    exhaustive enumeration; otherwise through the Smith normal form of
    the stacked conjugation-minus-identity maps.
    """
    if modulus < 2:
        raise ValueError("the modulus must be at least 2")
    classes = _generator_classes(action)
    mats = [c.conjugation_matrix() for c in classes]
    if modulus <= 4:
        return _fixed_invariants_enumerate(mats, modulus)
    return _fixed_invariants_smith(mats, modulus)


# ---------------------------------------------------------------------------
# mod-2 and mod-4 involution lemmas


def _validated_involution(order: QuatOrder, b: QuatElt) -> int:
    if not is_maximal(order):
        raise ValueError("the involution lemmas require a maximal order")
    if not order.contains(b):
        raise ValueError("b must lie in the order")
    m = _scalar_square(b, "b")
    if b.is_scalar():
        raise ValueError("b must not be a scalar")
    disc = discriminant(order.algebra)
    _check_divides(m, disc, "b")
    return m


def classify_involution_mod2(order: QuatOrder, b: QuatElt) -> tuple[list[int], bool]:
    """Fixed points of conjugation by b on O/2O, with the (Z/2)^3 test.

    Returns ``(invariants, criterion)`` where criterion is true exactly
    when the centralizer is (Z/2)^3, which happens if and only if
    2 | disc(B) and b^2 = 3 mod 4.
    """
    m = _validated_involution(order, b)
    cls = AutClass.from_element(order, b)
    fixed = residue_fixed_subgroup([cls], 2)
    criterion = fixed == [2, 2, 2]
    disc = discriminant(order.algebra)
    assert criterion == (disc % 2 == 0 and m % 4 == 3)
    return fixed, criterion


def search_mod4_anticommutator(
    order: QuatOrder, b: QuatElt, full_scan: bool = False
) -> QuatElt | None:
    """Search O/4O for x = 1 mod 2O with b^-1 x b x = -1; expected empty.

    With ``full_scan`` the congruence condition on x is dropped and all
    4^4 residues are scanned (a sanity mode in which witnesses may
    exist).  Requires b to have (Z/2)^3 fixed points mod 2; under that
    precondition the restricted search provably finds nothing.
    """
    _, criterion = classify_involution_mod2(order, b)
    if not criterion:
        raise ValueError("b must have (Z/2)^3 fixed points on O/2O")
    alg = order.algebra
    b_inv = b.inverse()
    if full_scan:
        candidates = itertools.product(range(4), repeat=4)
    else:
        candidates = (
            (1 + 2 * c0, 2 * c1, 2 * c2, 2 * c3)
            for c0, c1, c2, c3 in itertools.product(range(2), repeat=4)
        )
    for coords in candidates:
        x = order.element(coords)
        if x.is_zero():
            continue
        residual = b_inv * x * b * x + alg.one
        res_coords = order.coordinates(residual)
        assert all(c.denominator == 1 for c in res_coords)
        if all(int(c) % 4 == 0 for c in res_coords):
            return x
    return None


def classify_c2c2_mod2(action: DihedralAction) -> tuple[list[int], bool]:
    """Fixed points of a D2 action on O/2O, with the (Z/2)^3 test.

    The criterion holds if and only if 2 | disc(B) and both generator
    squares are 3 mod 4.
    """
    if action.kind != "D2":
        raise ValueError("classify_c2c2_mod2 takes a D2 action")
    fixed = residue_fixed_subgroup(action, 2)
    criterion = fixed == [2, 2, 2]
    m, n = action.params
    disc = discriminant(action.order.algebra)
    assert criterion == (disc % 2 == 0 and m % 4 == 3 and n % 4 == 3)
    return fixed, criterion


# ---------------------------------------------------------------------------
# left submodules of O/lO


def _structure_constants(order: QuatOrder) -> list[list[list[int]]]:
    """Integer coordinates of e_i e_j in the order basis."""
    consts = []
    for e in order.basis:
        row = []
        for f in order.basis:
            coords = order.coordinates(e * f)
            assert all(c.denominator == 1 for c in coords)
            row.append([int(c) for c in coords])
        consts.append(row)
    return consts


def _rref_mod(rows: Iterable[Sequence[int]], p: int) -> list[tuple[int, ...]]:
    """Reduced row echelon basis of the span of rows over F_p."""
    basis: list[list[int]] = []
    for row in rows:
        row = [v % p for v in row]
        for b in basis:
            pivot = next(c for c in range(4) if b[c])
            if row[pivot]:
                factor = row[pivot]
                row = [(v - factor * w) % p for v, w in zip(row, b)]
        if any(row):
            lead = next(c for c in range(4) if row[c])
            inv = pow(row[lead], -1, p)
            row = [v * inv % p for v in row]
            basis.append(row)
    basis.sort(key=lambda b: next(c for c in range(4) if b[c]))
    # clear entries above each pivot for a canonical form
    for idx, b in enumerate(basis):
        pivot = next(c for c in range(4) if b[c])
        for other in basis[:idx]:
            if other[pivot]:
                factor = other[pivot]
                other[:] = [(v - factor * w) % p for v, w in zip(other, b)]
    return [tuple(b) for b in basis]


def _left_ideal_basis(
    consts: Sequence[Sequence[Sequence[int]]], coords: Sequence[int], p: int
) -> list[tuple[int, ...]]:
    rows = []
    for i in range(4):
        # coordinates of e_i * x where x has the given coordinates
        rows.append(
            [sum(coords[j] * consts[i][j][c] for j in range(4)) % p for c in range(4)]
        )
    return _rref_mod(rows, p)


def _span(basis: Sequence[Sequence[int]], p: int) -> frozenset[tuple[int, ...]]:
    elements = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        vec = tuple(
            sum(c * b[col] for c, b in zip(coeffs, basis)) % p for col in range(4)
        )
        elements.add(vec)
    return frozenset(elements)


def generated_by(order: QuatOrder, ell: int, coords: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """The left submodule of O/lO generated by the element with given coordinates."""
    if not isprime(ell):
        raise ValueError("the modulus must be prime")
    consts = _structure_constants(order)
    basis = _left_ideal_basis(consts, [v % ell for v in coords], ell)
    return _span(basis, ell)


def submodule_lattice_mod_ell(order: QuatOrder, ell: int) -> list[frozenset[tuple[int, ...]]]:
    """All left submodules of O/lO, ordered by size then lexicographically.

    For l not dividing disc(B) the module is Mat_2(F_l): the zero module,
    l+1 minimal submodules of order l^2, and the full module.  For l
    dividing disc(B) there is a unique proper nonzero submodule, of
    order l^2.  Every submodule is principal, so the enumeration scans
    generated_by over all l^4 elements.
    """
    if not isprime(ell):
        raise ValueError("the modulus must be prime")
    consts = _structure_constants(order)
    seen: dict[tuple[tuple[int, ...], ...], None] = {}
    for coords in itertools.product(range(ell), repeat=4):
        key = tuple(_left_ideal_basis(consts, coords, ell))
        seen.setdefault(key, None)
    modules = [_span(key, ell) for key in seen]
    modules.sort(key=lambda mod: (len(mod), sorted(mod)))
    return modules


def three_dim_generator_check(
    order: QuatOrder, ell: int, subspace: Sequence[Sequence[int]]
) -> tuple[int, ...]:
    """First element of a 3-dimensional subspace of O/lO generating it as a left module.

    Scans the subspace in lexicographic coefficient order over the given
    basis.  Existence is guaranteed (a 3-dimensional subspace cannot
    avoid the generators), so exhaustion raises an internal assertion.
    """
    if not isprime(ell):
        raise ValueError("the modulus must be prime")
    basis = [tuple(v % ell for v in row) for row in subspace]
    if len(basis) != 3 or len(_rref_mod(basis, ell)) != 3:
        raise ValueError("the subspace must be 3-dimensional")
    consts = _structure_constants(order)
    for coeffs in itertools.product(range(ell), repeat=3):
        coords = tuple(
            sum(c * b[col] for c, b in zip(coeffs, basis)) % ell for col in range(4)
        )
        if len(_left_ideal_basis(consts, coords, ell)) == 4:
            assert len(generated_by(order, ell, coords)) == ell**4
            return coords
    raise AssertionError("a 3-dimensional subspace must contain a module generator")


# ---------------------------------------------------------------------------
# the enhanced semidirect product


@dataclass(frozen=True, slots=True)
class EnhancedElement:
    """A pair (gamma, x) with gamma in Aut(O) and x a unit of O/NO.

    The group law is (g1, x1)(g2, x2) = (g1 g2, x1^{g2} x2) with
    x^g = g^-1 x g.
    """

    gamma: AutClass
    coords: tuple[int, int, int, int]
    modulus: int

    @classmethod
    def create(
        cls, gamma: AutClass, coords: Sequence[int], modulus: int
    ) -> "EnhancedElement":
        if modulus < 2:
            raise ValueError("the modulus must be at least 2")
        reduced = tuple(int(c) % modulus for c in coords)
        norm = gamma.order.element(reduced).nrd()
        assert norm.denominator == 1
        if math.gcd(int(norm), modulus) != 1:
            raise ValueError("x must be a unit of O/NO (nrd a unit mod N)")
        return cls(gamma, reduced, modulus)


def enhanced_identity(order: QuatOrder, modulus: int) -> EnhancedElement:
    one = AutClass.from_element(order, order.algebra.one)
    return EnhancedElement.create(one, (1, 0, 0, 0), modulus)


def enhanced_mul(e1: EnhancedElement, e2: EnhancedElement) -> EnhancedElement:
    """The semidirect product law (g1, x1)(g2, x2) = (g1 g2, x1^{g2} x2)."""
    if e1.gamma.order != e2.gamma.order or e1.modulus != e2.modulus:
        raise ValueError("operands must share the order and the modulus")
    order, n = e1.gamma.order, e1.modulus
    mat = e2.gamma.conjugation_matrix()
    twisted = _vec_mat_mod(e1.coords, mat, n)
    product = order.element(twisted) * order.element(e2.coords)
    coords = order.coordinates(product)
    assert all(c.denominator == 1 for c in coords)
    return EnhancedElement.create(e1.gamma * e2.gamma, [int(c) for c in coords], n)


# ---------------------------------------------------------------------------
# polarizations and the distinguished quadratic subring


@dataclass(frozen=True, slots=True)
class PolarizationReport:
    degree_class: int
    subfield_disc: int
    jacobian_consistent: bool


def polarization_analysis(
    order: QuatOrder,
    mu: QuatElt,
    jacobian_mode: bool = False,
    c2c2_fixed: Sequence[int] | None = None,
) -> PolarizationReport:
    """Square-class arithmetic of the polarization attached to mu.

    ``degree_class`` is the squarefree part of disc(B) * nrd(mu) — the
    square class of the degree of the associated line bundle — and
    ``subfield_disc`` the discriminant of Q(mu) = Q(sqrt(mu^2)).  The
    polarization is principal (degree class 1) exactly when Q(mu) is
    Q(sqrt(-disc B)); in jacobian mode this equivalence is asserted.
    When the fixed-point data of an associated D2 action is supplied and
    equals (Z/2)^3, a principal polarization is impossible, so an even
    degree class is required for consistency.
    """
    if mu.is_zero() or mu.trd() != 0:
        raise ValueError("mu must be nonzero with reduced trace zero")
    mu_squared = (mu * mu).scalar_part()
    if mu_squared >= 0:
        raise ValueError("mu^2 must be a negative rational")
    disc = discriminant(order.algebra)
    degree_class, _ = rational_square_class(Fraction(disc) * mu.nrd())
    subfield_disc = fundamental_discriminant(mu_squared)
    matches_minus_disc = subfield_disc == fundamental_discriminant(-disc)
    consistent = (degree_class == 1) == matches_minus_disc
    if jacobian_mode:
        assert consistent  # both sides compare the same square classes
    if c2c2_fixed is not None and list(c2c2_fixed) == [2, 2, 2]:
        consistent = consistent and degree_class % 2 == 0
    return PolarizationReport(degree_class, subfield_disc, consistent)


@dataclass(frozen=True, slots=True)
class DistinguishedRing:
    """The quadratic ring Z[sqrt d] (or Z[w], Z[i]) attached to an action.

    ``index_bound`` bounds the index of Z[sqrt(generator_square)] in the
    ring: the ring is maximal away from 2.
    """

    generator_square: int
    ring_discriminant: int
    index_bound: int
    is_real: bool


def distinguished_subring(action: DihedralAction) -> DistinguishedRing:
    """The distinguished quadratic subring of O determined by the action.

    D1 fixes the centralizer Z[sqrt m] of its generator; D2 singles out
    the unique generator square class that is negative (exactly one of
    m, n, -mn is negative when B is indefinite); D4 yields Z[i] and
    D3/D6 yield Z[w].  The ring is unramified away from 6 disc(B).
    """
    disc = discriminant(action.order.algebra)
    if action.kind == "D1":
        d, _ = rational_square_class(action.params[0])
    elif action.kind == "D2":
        m, n = action.params
        squares = [rational_square_class(v)[0] for v in (m, n, -m * n)]
        negatives = [d for d in squares if d < 0]
        assert len(negatives) == 1  # B is indefinite
        d = negatives[0]
    elif action.kind == "D4":
        d = -1
    else:
        d = -3
    ring_disc = fundamental_discriminant(d)
    if action.kind in ("D3", "D4", "D6"):
        index_bound = 1
    else:
        index_bound = 2 if d % 4 == 1 else 1
    for p in factorint(abs(ring_disc)):
        assert (6 * disc) % int(p) == 0  # unramified away from 6 disc(B)
    return DistinguishedRing(d, ring_disc, index_bound, d > 0)


# ---------------------------------------------------------------------------
# serialization


def action_to_json(action: DihedralAction) -> dict:
    """JSON-ready document for a dihedral action."""
    params = {"m": action.params[0]}
    if len(action.params) == 2:
        params["n"] = action.params[1]
    generators = []
    for cls in action.generators:
        coords = action.order.coordinates(cls.rep)
        generators.append([int(c) for c in coords])
    return {
        "kind": action.kind,
        "order": order_to_json(action.order),
        "generators": generators,
        "params": params,
    }


def action_from_json(doc: dict) -> DihedralAction:
    order = order_from_json(doc["order"])
    generators = [order.element(coords) for coords in doc["generators"]]
    action = build_dihedral_action(order, doc["kind"], generators)
    expected = [doc["params"]["m"]] + ([doc["params"]["n"]] if "n" in doc["params"] else [])
    if list(action.params) != expected:
        raise ValueError("serialized parameters do not match the generators")
    return action
