"""Exact algebra of exponential-polynomial functions on the half line rho > 0.

Every value is a finite sum of terms

    c * rho**(mu*a + j) * exp(-beta*rho),    beta = 0  or  beta = b/(a + k),

with a complex coefficient c, integer keys mu in {0, 1} and j for the power,
and an integer index k selecting the decay rate. The positive reals (a, b)
form a shared numeric context. Because terms are merged by their integer
keys and never by floating-point comparison of realized powers, the
canonical form is exact even when a and b are irrational.

The family is closed under addition, scaling, power shifts, multiplication
by pure Laurent polynomials, and differentiation. Integrating a product of
two members against d(rho) on (0, inf) leaves the family; it is evaluated in
closed form through Gamma(s+1)/gamma**(s+1) and used only as a terminal
operation (the summed rate beta1 + beta2 is realized as a float and never
fed back into the algebra).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContextMismatch, DivergentIntegral, DomainError

# Canonicalization drops terms this far below the largest coefficient. Kept
# below every assertion tolerance used downstream so it cannot mask defects.
REL_TOL = 1e-13


@dataclass(frozen=True)
class Exponent:
    """Symbolic power mu*a + j with integer keys mu in {0, 1} and j."""

    mu: int
    j: int

    def __post_init__(self):
        if self.mu not in (0, 1):
            raise ValueError(f"exponent multiplier must be 0 or 1, got {self.mu}")
        if not isinstance(self.j, int):
            raise ValueError("exponent offset must be an integer")

    def realized(self, a: float) -> float:
        return self.mu * a + self.j


@dataclass(frozen=True)
class DecayIndex:
    """Decay rate selector: k=None means no decay, otherwise beta = b/(a+k)."""

    k: int | None = None

    def __post_init__(self):
        if self.k is not None and not isinstance(self.k, int):
            raise ValueError("decay index must be an integer or None")

    @property
    def is_zero(self) -> bool:
        return self.k is None

    def rate(self, a: float, b: float) -> float:
        if self.k is None:
            return 0.0
        return b / (a + self.k)


ZERO_DECAY = DecayIndex(None)


@dataclass(frozen=True)
class ExpoTerm:
    coeff: complex
    exp: Exponent
    decay: DecayIndex = ZERO_DECAY

    def key(self) -> tuple:
        k = self.decay.k
        return (self.exp.mu, self.exp.j, k is not None, 0 if k is None else k)


@dataclass(frozen=True)
class ExpoPoly:
    """Canonical finite sum of exponential-polynomial terms in one (a, b) context."""

    a: float
    b: float
    terms: tuple[ExpoTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("context requires a > 0 and b > 0")
        object.__setattr__(self, "terms", _canonicalize(self.a, self.b, self.terms))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, a: float, b: float) -> "ExpoPoly":
        return cls(a, b, ())

    @classmethod
    def term(cls, a: float, b: float, coeff: complex, mu: int = 0, j: int = 0,
             k: int | None = None) -> "ExpoPoly":
        return cls(a, b, (ExpoTerm(complex(coeff), Exponent(mu, j), DecayIndex(k)),))

    # -- ring-like operations -----------------------------------------------

    def _check_context(self, other: "ExpoPoly") -> None:
        if (self.a, self.b) != (other.a, other.b):
            raise ContextMismatch(
                f"contexts differ: ({self.a}, {self.b}) vs ({other.a}, {other.b})")

    def __add__(self, other: "ExpoPoly") -> "ExpoPoly":
        self._check_context(other)
        return ExpoPoly(self.a, self.b, self.terms + other.terms)

    def __sub__(self, other: "ExpoPoly") -> "ExpoPoly":
        return self + (-other)

    def __neg__(self) -> "ExpoPoly":
        return self.scale(-1.0)

    def scale(self, c: complex) -> "ExpoPoly":
        return ExpoPoly(self.a, self.b, tuple(
            ExpoTerm(t.coeff * c, t.exp, t.decay) for t in self.terms))

    def mul_power(self, s: int) -> "ExpoPoly":
        """Multiply by rho**s: shifts every integer offset j by s."""
        return ExpoPoly(self.a, self.b, tuple(
            ExpoTerm(t.coeff, Exponent(t.exp.mu, t.exp.j + s), t.decay)
            for t in self.terms))

    def mul_laurent(self, other: "ExpoPoly") -> "ExpoPoly":
        """Multiply by a pure Laurent polynomial (mu = 0, no decay, all terms).

        The restriction keeps the product inside the algebra; general products
        would create powers 2a + j and summed decay rates outside the key set.
        """
        self._check_context(other)
        out = []
        for q in other.terms:
            if q.exp.mu != 0 or not q.decay.is_zero:
                raise ValueError("multiplier must be a pure Laurent polynomial "
                                 "(mu = 0 and no exponential decay)")
            for t in self.terms:
                out.append(ExpoTerm(t.coeff * q.coeff,
                                    Exponent(t.exp.mu, t.exp.j + q.exp.j), t.decay))
        return ExpoPoly(self.a, self.b, tuple(out))

    def differentiate(self) -> "ExpoPoly":
        """d/d(rho). Term-wise product rule; the realized power becomes a coefficient."""
        out = []
        for t in self.terms:
            p = t.exp.realized(self.a)
            if p != 0.0:
                out.append(ExpoTerm(t.coeff * p,
                                    Exponent(t.exp.mu, t.exp.j - 1), t.decay))
            beta = t.decay.rate(self.a, self.b)
            if beta != 0.0:
                out.append(ExpoTerm(-t.coeff * beta, t.exp, t.decay))
        return ExpoPoly(self.a, self.b, tuple(out))

    def conjugate(self) -> "ExpoPoly":
        return ExpoPoly(self.a, self.b, tuple(
            ExpoTerm(t.coeff.conjugate(), t.exp, t.decay) for t in self.terms))

    # -- evaluation and integration -----------------------------------------

    def eval(self, rho: float) -> complex:
        if rho <= 0:
            raise DomainError(f"rho must be positive, got {rho}")
        total = 0j
        for t in self.terms:
            p = t.exp.realized(self.a)
            beta = t.decay.rate(self.a, self.b)
            total += t.coeff * rho ** p * math.exp(-beta * rho)
        return total

    def eval_array(self, rhos: np.ndarray) -> np.ndarray:
        rhos = np.asarray(rhos, dtype=float)
        if np.any(rhos <= 0):
            raise DomainError("all sample points must be positive")
        total = np.zeros(rhos.shape, dtype=complex)
        with np.errstate(under="ignore"):
            for t in self.terms:
                p = t.exp.realized(self.a)
                beta = t.decay.rate(self.a, self.b)
                total += t.coeff * rhos ** p * np.exp(-beta * rhos)
        return total

    def inner_product(self, other: "ExpoPoly") -> complex:
        """<self, other> = integral of conj(self)*other over (0, inf), in closed form.

        Each product term integrates to Gamma(s+1)/gamma**(s+1) with s the
        summed realized power and gamma the summed decay rate. Raises unless
        s > -1 and gamma > 0 for every product term.
        """
        self._check_context(other)
        total = 0j
        for t1 in self.terms:
            for t2 in other.terms:
                s = t1.exp.realized(self.a) + t2.exp.realized(self.a)
                gamma = (t1.decay.rate(self.a, self.b)
                         + t2.decay.rate(self.a, self.b))
                if s <= -1.0:
                    raise DivergentIntegral(
                        f"product power {s} is not integrable at 0")
                if gamma <= 0.0:
                    raise DivergentIntegral(
                        "product has no exponential decay at infinity")
                total += (t1.coeff.conjugate() * t2.coeff
                          * math.gamma(s + 1.0) / gamma ** (s + 1.0))
        return total

    def norm(self) -> float:
        return math.sqrt(self.inner_product(self).real)

    # -- predicates -----------------------------------------------------------

    def is_zero(self, tol: float = 1e-12) -> bool:
        """True when every coefficient is at most tol times max(1, largest |coeff|)."""
        if not self.terms:
            return True
        scale = max(1.0, self.max_abs_coeff())
        return all(abs(t.coeff) <= tol * scale for t in self.terms)

    def max_abs_coeff(self) -> float:
        return max((abs(t.coeff) for t in self.terms), default=0.0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            power = []
            if t.exp.mu:
                power.append("a" if t.exp.j == 0 else f"a{t.exp.j:+d}")
            elif t.exp.j:
                power.append(str(t.exp.j))
            pw = f"*rho^({'+'.join(power)})" if power else ""
            dk = "" if t.decay.is_zero else f"*exp(-b/(a+{t.decay.k}) rho)"
            parts.append(f"({t.coeff:.6g}){pw}{dk}")
        return " + ".join(parts)


def _canonicalize(a: float, b: float,
                  terms: tuple[ExpoTerm, ...]) -> tuple[ExpoTerm, ...]:
    acc: dict[tuple, complex] = {}
    for t in terms:
        if t.decay.k is not None and a + t.decay.k <= 0:
            raise ValueError(f"decay index {t.decay.k} gives a non-positive rate")
        key = t.key()
        acc[key] = acc.get(key, 0j) + complex(t.coeff)
    if not acc:
        return ()
    peak = max(abs(c) for c in acc.values())
    kept = []
    for key in sorted(acc):
        c = acc[key]
        if abs(c) == 0.0 or abs(c) <= REL_TOL * peak:
            continue
        mu, j, indexed, k = key
        kept.append(ExpoTerm(c, Exponent(mu, j), DecayIndex(k if indexed else None)))
    return tuple(kept)
