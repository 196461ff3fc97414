"""Exact multivariate polynomial arithmetic over the rationals.

Monomials are exponent tuples of fixed length ``nvars``; coefficients are
``fractions.Fraction``.  All operations are exact; the zero polynomial is
the unique one with an empty term dict.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Q]


def _q(c: Scalar) -> Q:
    return c if isinstance(c, Q) else Q(c)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[tuple, Q] = {}
        if terms:
            for mono, c in terms.items():
                c = _q(c)
                if c != 0:
                    if len(mono) != nvars:
                        raise ValueError("monomial length mismatch")
                    clean[tuple(mono)] = c
        self.terms = clean

    # ---- constructors -------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, c: Scalar) -> "Poly":
        return Poly(nvars, {(0,) * nvars: _q(c)})

    @staticmethod
    def var(nvars: int, i: int, c: Scalar = 1) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return Poly(nvars, {tuple(mono): _q(c)})

    # ---- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> Q:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.nvars, Q(0))

    # ---- ring operations -------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly.const(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Q(0)) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        out = Poly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly(self.nvars)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            c = _q(other)
            if c == 0:
                return Poly(self.nvars)
            out = Poly(self.nvars)
            out.terms = {m: cc * c for m, cc in self.terms.items()}
            return out
        self._check(other)
        acc: dict[tuple, Q] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = acc.get(m, Q(0)) + c1 * c2
                if s == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = s
        out = Poly(self.nvars)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar):
        c = _q(c)
        return self * (Q(1) / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # ---- calculus ------------------------------------------------------
    def diff(self, i: int) -> "Poly":
        acc: dict[tuple, Q] = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            mm = list(m)
            mm[i] -= 1
            acc[tuple(mm)] = c * m[i]
        out = Poly(self.nvars)
        out.terms = acc
        return out

    def subs(self, values: Mapping[int, "Poly | Scalar"]) -> "Poly":
        """Substitute polynomials (or scalars) for the given variable indices."""
        vals = {}
        for i, v in values.items():
            vals[i] = v if isinstance(v, Poly) else Poly.const(self.nvars, v)
        out = Poly(self.nvars)
        for m, c in self.terms.items():
            term = Poly.const(self.nvars, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if i in vals:
                    term = term * vals[i] ** e
                else:
                    term = term * Poly.var(self.nvars, i) ** e
            out = out + term
        return out

    def eval(self, point: Sequence[Scalar]) -> Q:
        total = Q(0)
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v *= _q(point[i]) ** e
            total += v
        return total

    # ---- grading ---------------------------------------------------------
    def weighted_degree(self, weights: Sequence[int]) -> int | None:
        """Top weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(w * e for w, e in zip(weights, m)) for m in self.terms)

    def weighted_parts(self, weights: Sequence[int]) -> dict[int, "Poly"]:
        parts: dict[int, Poly] = {}
        for m, c in self.terms.items():
            d = sum(w * e for w, e in zip(weights, m))
            parts.setdefault(d, Poly(self.nvars)).terms[m] = c
        return parts

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        return len(self.weighted_parts(weights)) <= 1

    # ---- structure access ----------------------------------------------
    def coeff(self, mono: tuple) -> Q:
        return self.terms.get(tuple(mono), Q(0))

    def monomials(self) -> Iterable[tuple]:
        return self.terms.keys()

    def lift(self, nvars: int, mapping: Sequence[int] | None = None) -> "Poly":
        """Re-embed into a ring with ``nvars`` variables.

        ``mapping[i]`` is the index of old variable i in the new ring;
        identity embedding when omitted.
        """
        if mapping is None:
            mapping = list(range(self.nvars))
        out = Poly(nvars)
        for m, c in self.terms.items():
            mm = [0] * nvars
            for i, e in enumerate(m):
                mm[mapping[i]] += e
            out.terms[tuple(mm)] = out.terms.get(tuple(mm), Q(0)) + c
        out.terms = {m: c for m, c in out.terms.items() if c != 0}
        return out

    # ---- rendering -------------------------------------------------------
    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda mm: (sum(mm), mm), reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            body = "*".join(factors)
            if not body:
                bits.append(str(c))
            elif c == 1:
                bits.append(body)
            elif c == -1:
                bits.append(f"-{body}")
            else:
                bits.append(f"{c}*{body}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s

    def __repr__(self):
        return f"Poly({self.render([f'x{i}' for i in range(self.nvars)])})"


def parse_fraction(text: str) -> Q:
    """Parse 'p/q' or integer text into an exact Fraction."""
    return Q(text.strip())


def monomials_of_weighted_degree(weights: Sequence[int], degree: int) -> list[tuple]:
    """All exponent tuples with the given exact weighted degree.

    Weights must be positive.  Deterministic (lexicographic) order.
    """
    n = len(weights)
    out: list[tuple] = []

    def rec(i: int, remaining: int, acc: list[int]) -> None:
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for e in range(remaining // w + 1):
            acc.append(e)
            rec(i + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, degree, [])
    return out
