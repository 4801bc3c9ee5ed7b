"""Brauer classes over Q (and over quadratic fields) as local invariant vectors.

A class is a finitely supported map from places of Q to Q/Z whose invariants
sum to zero, with real invariant 0 or 1/2.  Hilbert symbols use the standard
closed formulas; restriction and corestriction to a quadratic field track
places as (rational place, slot) pairs, never as ideals.

Over a number field the Schur index of a division class equals the lcm of
the local orders (Albert-Brauer-Hasse-Noether); index() computes that lcm
and certificates that rely on the identification record it as an axiom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (OrderViolation, RealPlaceOrder, ReciprocityViolation)
from .fields import is_prime

REAL_PLACE = "inf"

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"

HALF = Fraction(1, 2)


def frac_mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def _check_place(v):
    if v == REAL_PLACE:
        return v
    if isinstance(v, int) and is_prime(v):
        return v
    raise ValueError(f"not a place of Q: {v!r}")


@dataclass(frozen=True)
class InvariantVector:
    """Brauer class over Q: real invariant plus a sorted prime support."""

    real: Fraction
    primes: tuple  # ((p, Fraction), ...) sorted by p, nonzero values only

    def __post_init__(self):
        if self.real not in (Fraction(0), HALF):
            raise RealPlaceOrder(f"real invariant must be 0 or 1/2, got {self.real}")
        total = self.real
        last = 0
        for p, f in self.primes:
            _check_place(p)
            if not (p > last):
                raise ValueError("prime support must be strictly sorted")
            last = p
            if f != frac_mod1(f) or f == 0:
                raise ValueError("invariants must be reduced, nonzero, in (0,1)")
            total += f
        if frac_mod1(total) != 0:
            raise ReciprocityViolation(
                f"local invariants sum to {frac_mod1(total)}, not 0")

    @property
    def prime_map(self):
        return dict(self.primes)

    def at(self, v):
        if v == REAL_PLACE:
            return self.real
        return self.prime_map.get(v, Fraction(0))

    def support(self):
        out = ([REAL_PLACE] if self.real else []) + [p for p, _ in self.primes]
        return out

    def __repr__(self):
        parts = []
        if self.real:
            parts.append(f"inf:{self.real}")
        parts += [f"{p}:{f}" for p, f in self.primes]
        return "Br{" + ", ".join(parts) + "}"


def invariant_vector(real=0, primes=None):
    """Validated constructor from a real invariant and a prime->fraction map."""
    real = frac_mod1(Fraction(real))
    entries = []
    for p, f in sorted((primes or {}).items()):
        f = frac_mod1(Fraction(f))
        if f:
            entries.append((int(p), f))
    return InvariantVector(real=real, primes=tuple(entries))


ZERO_CLASS = invariant_vector()


def tensor(u, v):
    """Product in the Brauer group: pointwise addition in Q/Z."""
    real = frac_mod1(u.real + v.real)
    primes = {}
    for p, f in list(u.primes) + list(v.primes):
        primes[p] = frac_mod1(primes.get(p, Fraction(0)) + f)
    return invariant_vector(real, primes)


def inverse(u):
    return invariant_vector(frac_mod1(-u.real),
                            {p: frac_mod1(-f) for p, f in u.primes})


def is_split(u):
    return not u.real and not u.primes


def power(u, n):
    return invariant_vector(frac_mod1(n * u.real),
                            {p: frac_mod1(n * f) for p, f in u.primes})


def order(u):
    return _lcm([f.denominator for _, f in u.primes] + [u.real.denominator])


def _lcm(xs):
    out = 1
    for x in xs:
        g = _gcd(out, x)
        out = out // g * x
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def index(u):
    """lcm of the orders of the local invariants (= Schur index over Q)."""
    return order(u)


# ---------------------------------------------------------------------------
# Hilbert symbols


def _squareclass_int(a):
    a = Fraction(a)
    if a == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return a.numerator * a.denominator


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert_symbol(a, b, v):
    """(a, b)_v by the standard closed formulas.

    +1 exactly when z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion at v.  Odd p: valuations and quadratic residues; p = 2: units
    modulo 8; real place: signs.
    """
    a = _squareclass_int(a)
    b = _squareclass_int(b)
    _check_place(v)
    if v == REAL_PLACE:
        return -1 if (a < 0 and b < 0) else 1
    p = v
    alpha, u = _vp(a, p)
    beta, w = _vp(b, p)
    if p != 2:
        sign = 1
        if (alpha * beta) % 2 and _legendre(-1, p) == -1:
            sign = -sign
        if beta % 2 and _legendre(u, p) == -1:
            sign = -sign
        if alpha % 2 and _legendre(w, p) == -1:
            sign = -sign
        return sign
    eps_u = ((u - 1) // 2) % 2
    eps_w = ((w - 1) // 2) % 2
    omega_u = ((u * u - 1) // 8) % 2
    omega_w = ((w * w - 1) // 8) % 2
    e = eps_u * eps_w + alpha * omega_w + beta * omega_u
    return -1 if e % 2 else 1


def _factor(n):
    n = abs(n)
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def quaternion_class(a, b):
    """Class of the quaternion algebra (a, b): invariant 1/2 exactly at the
    places where the Hilbert symbol is -1."""
    ai = _squareclass_int(a)
    bi = _squareclass_int(b)
    candidates = {2} | set(_factor(ai)) | set(_factor(bi))
    primes = {}
    for p in sorted(candidates):
        if hilbert_symbol(ai, bi, p) == -1:
            primes[p] = HALF
    real = HALF if hilbert_symbol(ai, bi, REAL_PLACE) == -1 else Fraction(0)
    return invariant_vector(real, primes)


def order3_class(local_data):
    """Validated class of order dividing 3 from (place, fraction) pairs."""
    primes = {}
    for place, f in (local_data.items() if isinstance(local_data, dict)
                     else local_data):
        f = frac_mod1(Fraction(f))
        if place == REAL_PLACE:
            if f:
                raise RealPlaceOrder("order-3 class cannot ramify at the real place")
            continue
        if f.denominator not in (1, 3):
            raise OrderViolation(f"invariant {f} does not have order dividing 3")
        if f:
            primes[place] = f
    return invariant_vector(0, primes)


# ---------------------------------------------------------------------------
# quadratic fields and restriction / corestriction


def _squarefree(n):
    for p, e in _factor(n).items():
        if e >= 2:
            return False
    return True


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(d)) for squarefree d, or the split algebra Q x Q (d = None)."""

    d: object  # int or None

    def __post_init__(self):
        if self.d is None:
            return
        if not isinstance(self.d, int) or self.d in (0, 1) or not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer != 0, 1: {self.d!r}")

    @staticmethod
    def split():
        return QuadField(None)

    @property
    def is_split(self):
        return self.d is None

    def __repr__(self):
        return "QxQ" if self.is_split else f"Q(sqrt({self.d}))"


def splitting_in_quadratic(K, v):
    """Decomposition of a place of Q in K: split, inert or ramified."""
    _check_place(v)
    if K.is_split:
        return SPLIT
    d = K.d
    if v == REAL_PLACE:
        return SPLIT if d > 0 else INERT
    p = v
    if p == 2:
        if d % 8 == 1:
            return SPLIT
        if d % 8 == 5:
            return INERT
        return RAMIFIED  # d even, or d = 3 mod 4: 2 divides disc(K)
    if d % p == 0:
        return RAMIFIED
    return SPLIT if _legendre(d, p) == 1 else INERT


@dataclass(frozen=True)
class InvariantVectorK:
    """Brauer class over a quadratic field, places as (rational place, slot).

    Split places carry two slots, inert and ramified places one.  The real
    entry has two slots when K has two real embeddings (d > 0 or split K)
    and a single forced-zero slot when the archimedean place is complex.
    """

    K: QuadField
    real: tuple  # one or two fractions
    primes: tuple  # ((p, (f0,) or (f0, f1)), ...) sorted, some slot nonzero

    def __post_init__(self):
        n_real = 2 if (self.K.is_split or self.K.d > 0) else 1
        if len(self.real) != n_real:
            raise ValueError("wrong number of real slots for this field")
        total = Fraction(0)
        for f in self.real:
            if n_real == 1:
                if f:
                    raise RealPlaceOrder("complex place carries no Brauer invariant")
            elif f not in (Fraction(0), HALF):
                raise RealPlaceOrder("real invariant must be 0 or 1/2")
            total += f
        last = 0
        for p, slots in self.primes:
            _check_place(p)
            if not p > last:
                raise ValueError("prime support must be strictly sorted")
            last = p
            expected = 2 if splitting_in_quadratic(self.K, p) == SPLIT else 1
            if len(slots) != expected:
                raise ValueError(f"place {p} needs {expected} slot(s)")
            if not any(slots):
                raise ValueError("support entries must be nonzero somewhere")
            for f in slots:
                if f != frac_mod1(f):
                    raise ValueError("invariants must be reduced")
                total += f
        if frac_mod1(total) != 0:
            raise ReciprocityViolation("invariants over K do not sum to 0")
        if self.K.is_split:
            # Br(F x F) = Br F x Br F: each factor is reciprocal on its own
            for slot in (0, 1):
                part = self.real[slot] + sum((s[slot] for _, s in self.primes),
                                             Fraction(0))
                if frac_mod1(part) != 0:
                    raise ReciprocityViolation(
                        f"factor {slot} of the split algebra violates reciprocity")

    def __repr__(self):
        parts = [f"inf:({','.join(str(f) for f in self.real)})"] if any(self.real) else []
        parts += [f"{p}:({','.join(str(f) for f in slots)})" for p, slots in self.primes]
        return f"Br_{self.K}{{" + ", ".join(parts) + "}"


def invariant_vector_K(K, real=None, primes=None):
    n_real = 2 if (K.is_split or K.d > 0) else 1
    if real is None:
        real = (Fraction(0),) * n_real
    real = tuple(frac_mod1(Fraction(f)) for f in real)
    entries = []
    for p, slots in sorted((primes or {}).items()):
        if isinstance(slots, (int, Fraction)):
            slots = (slots,)
        slots = tuple(frac_mod1(Fraction(f)) for f in slots)
        if any(slots):
            entries.append((int(p), slots))
    return InvariantVectorK(K=K, real=real, primes=tuple(entries))


def zero_class_K(K):
    return invariant_vector_K(K)


def split_pair_K(c1, c2):
    """Class over K = F x F from its two factor classes."""
    K = QuadField.split()
    places = sorted(set(dict(c1.primes)) | set(dict(c2.primes)))
    primes = {p: (c1.at(p), c2.at(p)) for p in places}
    return invariant_vector_K(K, (c1.real, c2.real), primes)


def split_components(u):
    """The two factor classes of a class over split K."""
    if not u.K.is_split:
        raise ValueError("class is not over the split algebra")
    c1 = invariant_vector(u.real[0], {p: s[0] for p, s in u.primes})
    c2 = invariant_vector(u.real[1], {p: s[1] for p, s in u.primes})
    return c1, c2


def is_split_K(u):
    return not any(u.real) and not u.primes


def restriction(u, K):
    """Base change of a class to K: local degree times the invariant.

    Split places copy the invariant to both slots; inert and ramified places
    have local degree 2.
    """
    kind_real = splitting_in_quadratic(K, REAL_PLACE)
    if kind_real == SPLIT:
        real = (u.real, u.real)
    else:
        real = (frac_mod1(2 * u.real),)
    primes = {}
    for p, f in u.primes:
        if splitting_in_quadratic(K, p) == SPLIT:
            primes[p] = (f, f)
        else:
            primes[p] = (frac_mod1(2 * f),)
    return invariant_vector_K(K, real, primes)


def corestriction(u, K=None):
    """Sum of the invariants over the places above each rational place."""
    if K is not None and K != u.K:
        raise ValueError("field mismatch in corestriction")
    real = frac_mod1(sum(u.real, Fraction(0)))
    primes = {p: frac_mod1(sum(slots, Fraction(0))) for p, slots in u.primes}
    return invariant_vector(real, primes)


def admits_unitary_involution(u, K=None):
    """A class over K supports an involution of the second kind over Q
    exactly when its corestriction is split."""
    return is_split(corestriction(u, K))


def chatelet_kernel(u):
    """Multiples 0, u, 2u, ... up to the order of u: the classes killed by
    the function field of the associated twisted projective space."""
    n = order(u)
    return [power(u, t) for t in range(n)]


def decompose_degree6(u):
    """Split a class of order dividing 6 into its 2-part and 3-part.

    C = 3u has order dividing 2, D = 4u has order dividing 3, and C x D
    recovers u.
    """
    if power(u, 6) != ZERO_CLASS:
        raise OrderViolation("class does not have order dividing 6")
    C = power(u, 3)
    D = power(u, 4)
    return C, D


# ---------------------------------------------------------------------------
# JSON forms used by the CLI


def to_json(u):
    out = {"primes": {str(p): str(f) for p, f in u.primes}}
    if u.real:
        out["inf"] = str(u.real)
    return out


def from_json(obj):
    real = Fraction(obj.get("inf", "0"))
    primes = {int(p): Fraction(f) for p, f in obj.get("primes", {}).items()}
    return invariant_vector(real, primes)


def to_json_K(u):
    out = {
        "d": u.K.d,
        "inf": [str(f) for f in u.real],
        "primes": {str(p): [str(f) for f in slots] for p, slots in u.primes},
    }
    return out


def from_json_K(obj):
    K = QuadField(obj["d"]) if obj.get("d") is not None else QuadField.split()
    real = tuple(Fraction(f) for f in obj.get("inf", []))
    n_real = 2 if (K.is_split or K.d > 0) else 1
    if not real:
        real = (Fraction(0),) * n_real
    primes = {int(p): tuple(Fraction(f) for f in slots)
              for p, slots in obj.get("primes", {}).items()}
    return invariant_vector_K(K, real, primes)
