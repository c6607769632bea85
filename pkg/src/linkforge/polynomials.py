"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


@dataclass
class Polynomial:
    num_vars: int
    terms: Dict[Monomial, Fraction] = field(default_factory=dict)

    @staticmethod
    def zero(num_vars: int) -> "Polynomial":
        return Polynomial(num_vars, {})

    @staticmethod
    def variable(num_vars: int, j: int, coeff=1) -> "Polynomial":
        mono = tuple(1 if i == j else 0 for i in range(num_vars))
        return Polynomial(num_vars, {mono: Fraction(coeff)})

    @staticmethod
    def constant(num_vars: int, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(num_vars, {} if c == 0 else {tuple([0] * num_vars): c})

    def copy(self) -> "Polynomial":
        return Polynomial(self.num_vars, dict(self.terms))

    def clean(self) -> "Polynomial":
        self.terms = {m: c for m, c in self.terms.items() if c != 0}
        return self

    def add_term(self, mono: Monomial, coeff) -> None:
        c = self.terms.get(mono, Fraction(0)) + Fraction(coeff)
        if c == 0:
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = c

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = self.copy()
        for m, c in other.terms.items():
            out.add_term(m, c)
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        out = self.copy()
        for m, c in other.terms.items():
            out.add_term(m, -c)
        return out

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = Polynomial.zero(self.num_vars)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out.add_term(mono, c1 * c2)
        return out

    def scale(self, k) -> "Polynomial":
        k = Fraction(k)
        return Polynomial(self.num_vars, {m: c * k for m, c in self.terms.items() if c * k != 0})

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def max_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(tuple([0] * self.num_vars), Fraction(0))

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def eval(self, point: Sequence[float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for e, x in zip(m, point):
                if e:
                    t *= x ** e
            total += t
        return total

    def eval_exact(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for e, x in zip(m, point):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    # -- text format: one term per line, "coef e1 e2 ... ek" ---------
    def dumps(self) -> str:
        lines = [f"vars {self.num_vars}"]
        for m, c in sorted(self.terms.items()):
            lines.append(str(c) + " " + " ".join(str(e) for e in m))
        return "\n".join(lines)

    @staticmethod
    def loads(text: str) -> "Polynomial":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("vars"):
            raise ValueError("polynomial text must start with 'vars N'")
        nv = int(lines[0].split()[1])
        p = Polynomial.zero(nv)
        for ln in lines[1:]:
            parts = ln.split()
            coeff = Fraction(parts[0])
            mono = tuple(int(x) for x in parts[1:])
            if len(mono) != nv:
                raise ValueError(f"bad monomial arity in {ln!r}")
            p.add_term(mono, coeff)
        return p

    def __repr__(self) -> str:
        return f"Polynomial({self.num_vars}, {len(self.terms)} terms, deg {self.total_degree()})"
