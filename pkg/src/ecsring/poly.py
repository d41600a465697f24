"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .torus import format_fraction, parse_fraction

Monomial = tuple[int, ...]


class Poly:
    """Immutable polynomial in ``nvars`` variables ``x_1, ..., x_r``.

    Stored as a dict from exponent tuples to nonzero Fractions.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in sorted(clean.items()) if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "Poly":
        """The linear form ``sum_i coeffs[i] x_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                mono = [0] * n
                mono[i] = 1
                terms[tuple(mono)] = c
        return cls(n, terms)

    # structure
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute_linear(self, i: int, form: Sequence[Fraction]) -> "Poly":
        """Replace ``x_i`` by the linear form ``sum_j form[j] x_j`` (``form[i]`` must be 0)."""
        repl = Poly(self.nvars, {tuple(int(k == j) for k in range(self.nvars)): c for j, c in enumerate(form) if c})
        out = Poly.zero(self.nvars)
        for mono, c in self._terms.items():
            rest = list(mono)
            e = rest[i]
            rest[i] = 0
            out = out + Poly(self.nvars, {tuple(rest): c}) * repl**e
        return out

    def divisible_by_linear(self, lam: Sequence[int]) -> bool:
        """Whether the linear form ``<lam, x>`` divides this polynomial.

        Tested by restricting to the hyperplane ``<lam, x> = 0``.
        """
        if len(lam) != self.nvars:
            raise ValueError("linear form has the wrong number of variables")
        j = next((k for k, c in enumerate(lam) if c), None)
        if j is None:
            return self.is_zero()
        form = [Fraction(0) if k == j else Fraction(-lam[k], lam[j]) for k in range(self.nvars)]
        return self.substitute_linear(j, form).is_zero()

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            v = c
            for x, e in zip(point, mono):
                v *= Fraction(x) ** e
            total += v
        return total

    # serialisation
    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, m)): format_fraction(c) for m, c in self._terms.items()}

    @classmethod
    def from_json(cls, nvars: int, data) -> "Poly":
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls.const(nvars, parse_fraction(data))
        terms = {}
        for key, c in data.items():
            mono = tuple(int(e) for e in key.split(",")) if key.strip() else ()
            if len(mono) != nvars:
                raise ValueError(f"monomial key {key!r} needs {nvars} exponents")
            terms[mono] = parse_fraction(c)
        return cls(nvars, terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms.items():
            vars_ = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(mono) if e
            )
            coef = format_fraction(c)
            if not vars_:
                parts.append(coef)
            elif c == 1:
                parts.append(vars_)
            elif c == -1:
                parts.append("-" + vars_)
            else:
                parts.append(f"{coef}*{vars_}")
        return " + ".join(parts)
