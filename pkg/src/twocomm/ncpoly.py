"""Noncommutative polynomials and their rewriting into the commutator ideal.

A polynomial that vanishes on every commutative ring (equivalently, whose
abelianization is zero) lies in the two-sided ideal generated by the
commutators ``[x_i, x_j]``.  :func:`commutator_ideal_decompose` produces an
explicit expression

    f = sum_k g_k [x_{i_k}, x_{j_k}] h_k

by bubble-sorting every word: swapping a descending adjacent pair
``x_j x_i`` (``i < j``) into ``x_i x_j - [x_i, x_j]`` records one summand.
Variables are numbered from 1.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAnIdentity
from .fields import format_fraction, parse_fraction


@dataclass(frozen=True)
class NCPolynomial:
    """``terms`` maps words (tuples of variable indices) to nonzero rationals."""

    variables: int
    terms: dict

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            w = tuple(w)
            if any(not (1 <= v <= self.variables) for v in w):
                raise ValueError(f"word {w} uses a variable outside 1..{self.variables}")
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        object.__setattr__(self, "terms", {w: c for w, c in clean.items() if c})

    @classmethod
    def monomial(cls, variables: int, word, coeff=1) -> "NCPolynomial":
        return cls(variables, {tuple(word): coeff})

    def __add__(self, other):
        n = max(self.variables, other.variables)
        out = defaultdict(Fraction, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return NCPolynomial(n, out)

    def __neg__(self):
        return NCPolynomial(self.variables, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            out = defaultdict(Fraction)
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out[w1 + w2] += c1 * c2
            return NCPolynomial(max(self.variables, other.variables), out)
        c = Fraction(other)
        return NCPolynomial(self.variables, {w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "*".join(f"x{v}" for v in w) or "1"
            parts.append(f"{format_fraction(c)}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    def to_json(self):
        return {
            "vars": self.variables,
            "terms": [
                {"word": list(w), "coeff": format_fraction(c)}
                for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, doc) -> "NCPolynomial":
        n = doc["vars"]
        if not isinstance(n, int) or n < 0:
            raise ValueError("vars must be a nonnegative integer")
        terms = defaultdict(Fraction)
        for i, t in enumerate(doc["terms"]):
            word = t["word"]
            if not isinstance(word, list) or not all(isinstance(v, int) for v in word):
                raise ValueError(f"terms[{i}].word must be a list of integers")
            terms[tuple(word)] += parse_fraction(t.get("coeff", "1"))
        return cls(n, terms)


def commutator_poly(variables: int, i: int, j: int) -> NCPolynomial:
    if i == j:
        return NCPolynomial(variables, {})
    return NCPolynomial(variables, {(i, j): 1, (j, i): -1})


def abelianize(f: NCPolynomial) -> dict:
    """Image in the commutative polynomial ring: sorted-word keys, zero terms dropped."""
    out = defaultdict(Fraction)
    for w, c in f.terms.items():
        out[tuple(sorted(w))] += c
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class Summand:
    """``coeff * g [x_i, x_j] h`` with monomials ``g``, ``h``."""

    coeff: Fraction
    g: tuple
    i: int
    j: int
    h: tuple

    def expand(self, variables: int) -> NCPolynomial:
        g, h = NCPolynomial.monomial(variables, self.g, self.coeff), NCPolynomial.monomial(variables, self.h)
        return g * commutator_poly(variables, self.i, self.j) * h


@dataclass(frozen=True)
class CommutatorIdealDecomposition:
    variables: int
    summands: tuple

    @property
    def m(self) -> int:
        return len(self.summands)

    def to_json(self):
        return {
            "m": self.m,
            "summands": [
                {
                    "g": {"word": list(s.g), "coeff": format_fraction(s.coeff)},
                    "i": s.i,
                    "j": s.j,
                    "h": {"word": list(s.h), "coeff": "1"},
                }
                for s in self.summands
            ],
        }

    @classmethod
    def from_json(cls, variables: int, doc) -> "CommutatorIdealDecomposition":
        out = []
        for s in doc["summands"]:
            coeff = parse_fraction(s["g"].get("coeff", "1")) * parse_fraction(s["h"].get("coeff", "1"))
            out.append(Summand(coeff, tuple(s["g"]["word"]), s["i"], s["j"], tuple(s["h"]["word"])))
        return cls(variables, tuple(out))


def commutator_ideal_decompose(f: NCPolynomial) -> CommutatorIdealDecomposition:
    if abelianize(f):
        raise NotAnIdentity("f does not vanish under abelianization, so it is not an identity for a field")
    acc = defaultdict(Fraction)
    order = []
    for word, c in sorted(f.terms.items(), key=lambda t: (len(t[0]), t[0])):
        w = list(word)
        while True:
            pos = next((p for p in range(len(w) - 1) if w[p] > w[p + 1]), None)
            if pos is None:
                break
            j, i = w[pos], w[pos + 1]
            key = (tuple(w[:pos]), i, j, tuple(w[pos + 2:]))
            if key not in acc:
                order.append(key)
            # c * g x_j x_i h = c * g x_i x_j h - c * g [x_i, x_j] h
            acc[key] -= c
            w[pos], w[pos + 1] = i, j
    summands = tuple(Summand(acc[k], k[0], k[1], k[2], k[3]) for k in order if acc[k])
    return CommutatorIdealDecomposition(f.variables, summands)


def expand(dec: CommutatorIdealDecomposition) -> NCPolynomial:
    """Free-algebra expansion of the decomposition."""
    total = Counter()
    for s in dec.summands:
        total[s.g + (s.i, s.j) + s.h] += s.coeff
        total[s.g + (s.j, s.i) + s.h] -= s.coeff
    return NCPolynomial(dec.variables, dict(total))


def expand_check(dec: CommutatorIdealDecomposition, f: NCPolynomial) -> bool:
    """Whether the decomposition expands to exactly ``f``."""
    return expand(dec).terms == f.terms
