"""Exact integer Laurent polynomials in the single variable A.

Bracket state sums take values here.  Polynomials are immutable and store
only nonzero coefficients, so equality is plain coefficient-wise equality.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Tuple

__all__ = ["Laurent"]

_TERM_RE = re.compile(r"^(-?\d+)\*A\^(-?\d+)$")


class Laurent:
    """Laurent polynomial over the integers, keyed by exponent of A."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, c in items:
            if c:
                c = acc.get(exp, 0) + c
                if c:
                    acc[exp] = c
                else:
                    del acc[exp]
        self._coeffs = acc

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def A(cls, exp: int = 1) -> "Laurent":
        return cls({exp: 1})

    @classmethod
    def minus_A3_power(cls, k: int) -> "Laurent":
        """(-A^3)**k for any integer k, including negative k."""
        return cls({3 * k: -1 if k % 2 else 1})

    @classmethod
    def loop_factor(cls) -> "Laurent":
        """-A^2 - A^-2, the weight of a closed trivial curve."""
        return cls({2: -1, -2: -1})

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "Laurent") -> "Laurent":
        acc = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            c = acc.get(exp, 0) + c
            if c:
                acc[exp] = c
            else:
                acc.pop(exp, None)
        out = Laurent.__new__(Laurent)
        out._coeffs = acc
        return out

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __neg__(self) -> "Laurent":
        out = Laurent.__new__(Laurent)
        out._coeffs = {e: -c for e, c in self._coeffs.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Laurent.zero()
            out = Laurent.__new__(Laurent)
            out._coeffs = {e: c * other for e, c in self._coeffs.items()}
            return out
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                c = acc.get(e, 0) + c1 * c2
                if c:
                    acc[e] = c
                else:
                    del acc[e]
        out = Laurent.__new__(Laurent)
        out._coeffs = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("negative powers only defined for monomials")
            ((exp, c),) = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("negative powers need a unit coefficient")
            return Laurent({exp * n: -1 if (c == -1 and n % 2) else 1})
        out = Laurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def terms(self) -> list[Tuple[int, int]]:
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._coeffs.items(), reverse=True)

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def top_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degrees")
        return max(self._coeffs)

    def low_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degrees")
        return min(self._coeffs)

    def span(self) -> int:
        """Top degree minus low degree; zero for the zero polynomial."""
        if not self._coeffs:
            return 0
        return max(self._coeffs) - min(self._coeffs)

    def subs_A_inverse(self) -> "Laurent":
        """The polynomial with A replaced by A^-1."""
        out = Laurent.__new__(Laurent)
        out._coeffs = {-e: c for e, c in self._coeffs.items()}
        return out

    # -- text --------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{c}*A^{e}" for e, c in self.terms())

    def __repr__(self) -> str:
        return f"Laurent({self!s})"

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        text = text.strip()
        if text == "0":
            return cls.zero()
        acc = {}
        for part in text.split(" + "):
            m = _TERM_RE.match(part.strip())
            if not m:
                raise ValueError(f"bad Laurent term: {part!r}")
            c, e = int(m.group(1)), int(m.group(2))
            if e in acc:
                raise ValueError(f"duplicate exponent {e}")
            acc[e] = c
        return cls(acc)
