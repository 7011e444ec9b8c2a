"""
Arithmetic of real quadratic discriminants.

Reduced indefinite forms and their reduction cycles (one cycle per narrow
class), the fundamental unit of positive norm, geodesic axes, the
Kronecker character and L(1, chi_D).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from app.errors import DomainError, NotReducedError
from app.geometry import GeodesicLine, Isometry, Tangent, act, axis_frame, axis_tangent
from app.models import UnitData

logger = logging.getLogger(__name__)

ANCHOR_TOL = 1e-6


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n % 4 == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental(D: int) -> bool:
    """Fundamental discriminant of a real quadratic field."""
    if D <= 1:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True, slots=True)
class Discriminant:
    value: int

    def __post_init__(self):
        if not is_fundamental(self.value):
            raise DomainError(f"{self.value} is not a fundamental discriminant")

    @property
    def squarefree(self) -> bool:
        return is_squarefree(self.value)


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant(int(D))


@dataclass(frozen=True, slots=True, order=True)
class FormTriple:
    """The form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0:
            raise DomainError("Leading coefficient must be nonzero")
        if self.discriminant <= 0:
            raise DomainError(f"Form {self.as_tuple()} is not indefinite")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise DomainError(f"Form {self.as_tuple()} is not primitive")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def is_reduced(self) -> bool:
        s = math.isqrt(self.discriminant)
        two_a = 2 * abs(self.a)
        return 0 < self.b <= s and two_a + self.b > s and two_a - self.b <= s


@dataclass(frozen=True, slots=True)
class FormCycle:
    forms: tuple[FormTriple, ...]

    def __len__(self):
        return len(self.forms)

    @property
    def representative(self) -> FormTriple:
        return self.forms[0]


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol (a / n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        v += 1
        n //= 2
    k = -1 if v % 2 and a % 8 in (3, 5) else 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    while True:
        if a == 0:
            return k if n == 1 else 0
        v = 0
        while a % 2 == 0:
            v += 1
            a //= 2
        if v % 2 and n % 8 in (3, 5):
            k = -k
        if a & n & 2:
            k = -k
        r = abs(a)
        a = n % r
        n = r


def kronecker_chi(D, n: int) -> int:
    """chi_D(n) for a fundamental discriminant D > 0."""
    return kronecker(as_discriminant(D).value, n)


def primes_below(n: int) -> np.ndarray:
    if n < 3:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def character_table(D) -> np.ndarray:
    """chi_D(n) for n = 0..D-1, built multiplicatively from chi_D(p)."""
    D = as_discriminant(D).value
    chi = np.ones(D, dtype=np.int8)
    chi[0] = 0
    for p in primes_below(D):
        p = int(p)
        chi_p = kronecker(D, p)
        if chi_p == 1:
            continue
        if chi_p == 0:
            chi[p::p] = 0
            continue
        pk = p
        while pk < D:
            chi[pk::pk] *= -1
            pk *= p
    return chi


def reduced_forms(D) -> list[FormTriple]:
    """All reduced forms: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b."""
    D = as_discriminant(D).value
    s = math.isqrt(D)
    forms = []
    for b in range(2 - D % 2, s + 1, 2):
        m = (D - b * b) // 4
        lo = max(1, (s + 2 - b) // 2)
        hi = (s + b) // 2
        for a in range(lo, hi + 1):
            if m % a:
                continue
            c = m // a
            if math.gcd(a, b, c) != 1:
                continue
            forms.append(FormTriple(a, b, -c))
            forms.append(FormTriple(-a, b, c))
    return sorted(forms)


def reduction_step(f: FormTriple) -> FormTriple:
    """(a, b, c) -> (c, b', c') with b' = -b mod 2|c| in the reduced window."""
    if not f.is_reduced():
        raise NotReducedError(f"Form {f.as_tuple()} is not reduced")
    D = f.discriminant
    s = math.isqrt(D)
    m = 2 * abs(f.c)
    b_next = s - (s + f.b) % m
    c_next, rem = divmod(b_next * b_next - D, 4 * f.c)
    if rem:
        raise NotReducedError(f"Reduction step of {f.as_tuple()} left a remainder")
    return FormTriple(f.c, b_next, c_next)


def form_cycles(D) -> list[FormCycle]:
    """Partition of the reduced forms into reduction-step orbits."""
    forms = reduced_forms(D)
    remaining = set(forms)
    cycles = []
    for start in forms:
        if start not in remaining:
            continue
        members = []
        current = start
        while True:
            members.append(current)
            remaining.discard(current)
            current = reduction_step(current)
            if current == start:
                break
        cycles.append(FormCycle(tuple(members)))
    logger.debug(f"D={as_discriminant(D).value}: {len(cycles)} cycles from {len(forms)} reduced forms")
    return cycles


def cycle_from_representative(f: FormTriple) -> FormCycle:
    members = [f]
    current = reduction_step(f)
    while current != f:
        members.append(current)
        current = reduction_step(current)
    return FormCycle(tuple(members))


def _geodesic_length(t: int) -> float:
    """2 arccosh(t / 2), safe for integers far beyond double range."""
    inv = 4.0 / (t * t) if t < 10**150 else 0.0
    return 2.0 * (math.log(t) - math.log(2.0) + math.log1p(math.sqrt(1.0 - inv)))


def fundamental_unit_plus(D) -> UnitData:
    """Smallest (t, u) with t^2 - D u^2 = 4, from the continued fraction of
    (b0 + sqrt(D)) / 2.

    Convergents h/k give candidates t = 2h - b0 k, u = k; the first one of
    norm +-4 is the fundamental unit, squared when its norm is negative.
    """
    D = as_discriminant(D).value
    s = math.isqrt(D)
    b0 = D % 2
    P, Q = b0, 2
    h2, h1 = 0, 1
    k2, k1 = 1, 0
    while True:
        a = (P + s) // Q
        h, k = a * h1 + h2, a * k1 + k2
        t, u = 2 * h - b0 * k, k
        norm = t * t - D * u * u
        if norm in (4, -4):
            break
        h2, h1, k2, k1 = h1, h, k1, k
        P = a * Q - P
        Q = (D - P * P) // Q
    fundamental_norm = 1 if norm == 4 else -1
    if norm == -4:
        t, u = (t * t + D * u * u) // 2, t * u
    length = _geodesic_length(t)
    try:
        eps_plus = math.exp(0.5 * length)
    except OverflowError:
        eps_plus = math.inf
    return UnitData(
        t=t,
        u=u,
        eps_plus=eps_plus,
        geodesic_length=length,
        fundamental_norm=fundamental_norm,
    )


def automorph(f: FormTriple, unit: UnitData) -> tuple[int, int, int, int]:
    """The generator of the form's stabiliser with trace t."""
    t, u = unit.t, unit.u
    return ((t - f.b * u) // 2, -f.c * u, f.a * u, (t + f.b * u) // 2)


def axis_of_form(f: FormTriple) -> GeodesicLine:
    """Axis with endpoints (-b -+ sqrt(D)) / 2a.

    endpoint_plus = (-b + sqrt(D)) / 2a is the attracting fixed point of the
    automorph, where |c z + d| = eps_plus > 1.
    """
    root = math.sqrt(f.discriminant)
    return GeodesicLine((-f.b - root) / (2 * f.a), (-f.b + root) / (2 * f.a))


@dataclass(frozen=True, slots=True)
class CycleAnchor:
    """The closed geodesic of a cycle passes, modulo the modular group, through
    the top of the axis of `form` at time `position`."""

    form: FormTriple
    tangent: Tangent
    position: float


def cycle_anchors(cycle: FormCycle) -> tuple[list[CycleAnchor], float]:
    """One anchor per form of the cycle, and the summed period.

    The step f -> g satisfies g = f o M with M = [[0, -1], [1, delta]], and M
    carries the top of the axis of g onto the axis of f, further along it.
    """
    forms = cycle.forms
    anchors = []
    position = 0.0
    for i, f in enumerate(forms):
        g = forms[(i + 1) % len(forms)]
        delta, rem = divmod(g.b + f.b, 2 * f.c)
        if rem:
            raise NotReducedError(f"Forms {f.as_tuple()} and {g.as_tuple()} are not consecutive in a cycle")
        line = axis_of_form(f)
        pushed = act(Isometry.of(0.0, -1.0, 1.0, float(delta)), axis_tangent(axis_of_form(g)))
        local = act(axis_frame(line), pushed)
        turn = min(local.angle, 2.0 * math.pi - local.angle)
        if abs(local.base.x) > ANCHOR_TOL * local.base.y or turn > ANCHOR_TOL or local.base.y <= 1.0:
            raise DomainError(f"Reduction step of {f.as_tuple()} does not advance along its axis")
        anchors.append(CycleAnchor(f, axis_tangent(line), position))
        position += math.log(local.base.y)
    return anchors, position


def dirichlet_L1(D) -> float:
    """L(1, chi_D) = -(1/sqrt D) sum_{a<D} chi_D(a) log(2 sin(pi a / D))."""
    D = as_discriminant(D).value
    chi = character_table(D).astype(float)
    a = np.arange(1, D)
    terms = chi[1:] * np.log(2.0 * np.sin(np.pi * a / D))
    return float(-np.sum(terms) / math.sqrt(D))


def dirichlet_series_L1(D, terms: int) -> float:
    """Partial sum of sum chi_D(n) / n, used as an independent check."""
    chi = character_table(D).astype(float)
    n = np.arange(1, terms + 1)
    return float(np.sum(chi[n % chi.size] / n))


def class_number_formula_check(D) -> float:
    """Relative residual of h+ * 2 log eps+ = 2 sqrt(D) L(1, chi_D)."""
    D = as_discriminant(D).value
    h_plus = len(form_cycles(D))
    length = fundamental_unit_plus(D).geodesic_length
    analytic = 2.0 * math.sqrt(D) * dirichlet_L1(D)
    return abs(h_plus * length - analytic) / analytic
