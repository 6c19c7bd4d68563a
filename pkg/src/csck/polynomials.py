"""Sparse exact polynomials, truncated bivariate series, and root isolation.

Three value types cover every algebraic need of the package:

* :class:`MultiPoly3` -- sparse polynomials in (x, y, z) over the rationals,
  stored as a map from exponent triples to nonzero ``Fraction`` coefficients.
* :class:`UniPoly` -- dense univariate polynomials (line restrictions and the
  localized sums live here).
* :class:`TruncSeries2` -- bivariate power series truncated at a total
  degree, exact on every retained coefficient.

Real roots of a ``UniPoly`` are isolated with Sturm chains on the square-free
part; all arithmetic is exact, so the isolation is a proof, not a heuristic.

Canonical term order is graded lexicographic, largest first (total degree,
then exponent tuple); serialization and printing follow it, so output is
byte-deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .exact import general_binomial

Exponent3 = tuple[int, int, int]

_VARS3 = ("x", "y", "z")


def _term_key(exponent: Sequence[int]):
    return (sum(exponent), tuple(exponent))


def _format_terms(terms: list[tuple[tuple[int, ...], Fraction]], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for exponent, coeff in terms:
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, exponent)
            if e != 0
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


class MultiPoly3:
    """Sparse exact polynomial in the Kahler-coordinate variables (x, y, z)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent3, Fraction | int] | Iterable[tuple[Exponent3, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[Exponent3, Fraction] = {}
        for exponent, coeff in items:
            e = tuple(int(v) for v in exponent)
            if len(e) != 3 or any(v < 0 for v in e):
                raise ValueError(f"bad exponent triple {exponent!r}")
            c = data.get(e, Fraction(0)) + Fraction(coeff)
            if c:
                data[e] = c
            else:
                data.pop(e, None)
        self._terms = data

    @classmethod
    def zero(cls) -> "MultiPoly3":
        return cls()

    @classmethod
    def constant(cls, value: Fraction | int) -> "MultiPoly3":
        return cls({(0, 0, 0): value})

    @classmethod
    def monomial(cls, exponent: Exponent3, coeff: Fraction | int = 1) -> "MultiPoly3":
        return cls({tuple(exponent): coeff})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> list[tuple[Exponent3, Fraction]]:
        """Terms in canonical order (graded lex, largest first)."""
        return sorted(self._terms.items(), key=lambda t: _term_key(t[0]), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(int(v) for v in exponent), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self._terms:
            return True
        degrees = {sum(e) for e in self._terms}
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "MultiPoly3") -> "MultiPoly3":
        data = dict(self._terms)
        for e, c in other._terms.items():
            s = data.get(e, Fraction(0)) + c
            if s:
                data[e] = s
            else:
                data.pop(e, None)
        out = MultiPoly3.__new__(MultiPoly3)
        out._terms = data
        return out

    def __neg__(self) -> "MultiPoly3":
        out = MultiPoly3.__new__(MultiPoly3)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "MultiPoly3") -> "MultiPoly3":
        return self + (-other)

    def __mul__(self, other: "MultiPoly3 | Fraction | int") -> "MultiPoly3":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        data: dict[Exponent3, Fraction] = {}
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                s = data.get(e, Fraction(0)) + ca * cb
                if s:
                    data[e] = s
                else:
                    data.pop(e, None)
        out = MultiPoly3.__new__(MultiPoly3)
        out._terms = data
        return out

    __rmul__ = __mul__

    def scaled(self, factor: Fraction | int) -> "MultiPoly3":
        f = Fraction(factor)
        if not f:
            return MultiPoly3.zero()
        out = MultiPoly3.__new__(MultiPoly3)
        out._terms = {e: c * f for e, c in self._terms.items()}
        return out

    def __pow__(self, e: int) -> "MultiPoly3":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly3.constant(1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPoly3) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        px, py, pz = (Fraction(v) for v in point)
        total = Fraction(0)
        for (ex, ey, ez), c in self._terms.items():
            total += c * px**ex * py**ey * pz**ez
        return total

    def restrict_to_line(self, start: Sequence[Fraction | int], end: Sequence[Fraction | int]) -> "UniPoly":
        """The univariate polynomial t -> p((1 - t) * start + t * end).

        Exact for arbitrary rational endpoints.  Internally the coordinate
        forms are scaled to a shared integer denominator so the per-monomial
        convolutions run over plain integers.
        """
        s = [Fraction(v) for v in start]
        e = [Fraction(v) for v in end]
        if len(s) != 3 or len(e) != 3:
            raise ValueError("line endpoints must have three coordinates")
        if s == e:
            raise ValueError("coincident line endpoints")
        if self.is_zero():
            return UniPoly(())
        scale = lcm(*(v.denominator for v in s + e))
        lines = [(int(si * scale), int((ei - si) * scale)) for si, ei in zip(s, e)]

        max_e = [0, 0, 0]
        for exp in self._terms:
            for i in range(3):
                max_e[i] = max(max_e[i], exp[i])
        pows: list[list[list[int]]] = []
        for (a, b), top in zip(lines, max_e):
            table = [[1]]
            for _ in range(top):
                prev = table[-1]
                nxt = [0] * (len(prev) + 1)
                for k, v in enumerate(prev):
                    nxt[k] += v * a
                    nxt[k + 1] += v * b
                table.append(nxt)
            pows.append(table)

        deg = self.total_degree()
        acc = [Fraction(0)] * (deg + 1)
        for (ex, ey, ez), c in self._terms.items():
            conv = _int_convolve(_int_convolve(pows[0][ex], pows[1][ey]), pows[2][ez])
            f = c / Fraction(scale) ** (ex + ey + ez)
            for k, v in enumerate(conv):
                if v:
                    acc[k] += f * v
        return UniPoly(acc)

    # -- serialization ------------------------------------------------------

    def to_json_terms(self) -> list[dict]:
        return [{"e": list(e), "c": str(c)} for e, c in self.terms()]

    @classmethod
    def from_json_terms(cls, obj: Iterable[dict]) -> "MultiPoly3":
        return cls({tuple(t["e"]): Fraction(t["c"]) for t in obj})

    def __str__(self) -> str:
        return _format_terms(self.terms(), _VARS3)

    def __repr__(self) -> str:
        return f"MultiPoly3({dict(self.terms())!r})"


X = MultiPoly3.monomial((1, 0, 0))
Y = MultiPoly3.monomial((0, 1, 0))
Z = MultiPoly3.monomial((0, 0, 1))


def _int_convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


class UniPoly:
    """Dense exact univariate polynomial; coefficient i multiplies t^i."""

    __slots__ = ("_coeffs", "var")

    def __init__(self, coeffs: Iterable[Fraction | int] = (), var: str = "t"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var: str = "t") -> "UniPoly":
        return cls((), var)

    @classmethod
    def constant(cls, value: Fraction | int, var: str = "t") -> "UniPoly":
        return cls((value,), var)

    @property
    def degree(self) -> int:
        """Degree, with the convention -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def order(self) -> int | None:
        """Smallest exponent with nonzero coefficient; None for zero."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def coefficient(self, k: int) -> Fraction:
        if k < 0 or k >= len(self._coeffs):
            return Fraction(0)
        return self._coeffs[k]

    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out, self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self._coeffs], self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly | Fraction | int") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self._coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.constant(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def evaluate(self, point: Fraction | int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self._coeffs):
            total = total * point + c
        return total

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self._coeffs)][1:], self.var)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dv = other._coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return UniPoly((), self.var), UniPoly(rem, self.var)
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quot[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dv[j]
        return UniPoly(quot, self.var), UniPoly(rem, self.var)

    def to_json_terms(self) -> list[dict]:
        return [{"e": [i], "c": str(c)} for i, c in reversed(list(enumerate(self._coeffs))) if c]

    @classmethod
    def from_json_terms(cls, obj: Iterable[dict], var: str = "t") -> "UniPoly":
        terms = {t["e"][0]: Fraction(t["c"]) for t in obj}
        top = max(terms, default=-1)
        return cls([terms.get(i, Fraction(0)) for i in range(top + 1)], var)

    def __str__(self) -> str:
        terms = [((i,), c) for i, c in reversed(list(enumerate(self._coeffs))) if c]
        return _format_terms(terms, (self.var,))

    def __repr__(self) -> str:
        return f"UniPoly({list(self._coeffs)!r}, var={self.var!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor over the rationals."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.leading_coefficient())


def square_free_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'): same roots, all simple."""
    if p.is_zero():
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, r = p.divmod(g)
    assert r.is_zero()
    return q


class TruncSeries2:
    """Bivariate power series in (x, y), truncated past a total degree.

    Arithmetic is exact on the retained range: the stored coefficient of any
    monomial of total degree <= truncation equals the true coefficient of the
    represented product.  Binary operations demand equal truncation degrees.
    """

    __slots__ = ("truncation", "_terms")

    def __init__(self, truncation: int, terms: Mapping[tuple[int, int], Fraction | int] | Iterable = ()):
        if truncation < 0:
            raise ValueError("truncation degree must be non-negative")
        self.truncation = truncation
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[tuple[int, int], Fraction] = {}
        for exponent, coeff in items:
            e = (int(exponent[0]), int(exponent[1]))
            if e[0] < 0 or e[1] < 0:
                raise ValueError(f"bad exponent pair {exponent!r}")
            if e[0] + e[1] > truncation:
                continue
            c = data.get(e, Fraction(0)) + Fraction(coeff)
            if c:
                data[e] = c
            else:
                data.pop(e, None)
        self._terms = data

    @classmethod
    def constant(cls, value: Fraction | int, truncation: int) -> "TruncSeries2":
        return cls(truncation, {(0, 0): value})

    @classmethod
    def binomial_series(cls, e_x: int, e_y: int, truncation: int) -> "TruncSeries2":
        """(1 + x)^e_x (1 + y)^e_y for arbitrary integer exponents."""
        data = {}
        for i in range(truncation + 1):
            bx = general_binomial(e_x, i)
            if bx == 0:
                continue
            for j in range(truncation + 1 - i):
                by = general_binomial(e_y, j)
                if by:
                    data[(i, j)] = Fraction(bx * by)
        return cls(truncation, data)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _term_key(t[0]), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        e = (int(exponent[0]), int(exponent[1]))
        if e[0] + e[1] > self.truncation:
            raise ValueError(
                f"coefficient {e} lies beyond truncation degree {self.truncation}"
            )
        return self._terms.get(e, Fraction(0))

    def _check(self, other: "TruncSeries2") -> None:
        if self.truncation != other.truncation:
            raise ValueError(
                f"mismatched truncation degrees {self.truncation} != {other.truncation}"
            )

    def __add__(self, other: "TruncSeries2") -> "TruncSeries2":
        self._check(other)
        data = dict(self._terms)
        for e, c in other._terms.items():
            s = data.get(e, Fraction(0)) + c
            if s:
                data[e] = s
            else:
                data.pop(e, None)
        out = TruncSeries2.__new__(TruncSeries2)
        out.truncation = self.truncation
        out._terms = data
        return out

    def __neg__(self) -> "TruncSeries2":
        out = TruncSeries2.__new__(TruncSeries2)
        out.truncation = self.truncation
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "TruncSeries2") -> "TruncSeries2":
        return self + (-other)

    def __mul__(self, other: "TruncSeries2 | Fraction | int") -> "TruncSeries2":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            out = TruncSeries2.__new__(TruncSeries2)
            out.truncation = self.truncation
            out._terms = {e: c * f for e, c in self._terms.items()} if f else {}
            return out
        self._check(other)
        cap = self.truncation
        data: dict[tuple[int, int], Fraction] = {}
        for (a0, a1), ca in self._terms.items():
            for (b0, b1), cb in other._terms.items():
                e = (a0 + b0, a1 + b1)
                if e[0] + e[1] > cap:
                    continue
                s = data.get(e, Fraction(0)) + ca * cb
                if s:
                    data[e] = s
                else:
                    data.pop(e, None)
        out = TruncSeries2.__new__(TruncSeries2)
        out.truncation = cap
        out._terms = data
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncSeries2":
        if e < 0:
            raise ValueError("negative series power")
        result = TruncSeries2.constant(1, self.truncation)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncSeries2)
            and self.truncation == other.truncation
            and self._terms == other._terms
        )

    def to_json_terms(self) -> list[dict]:
        return [{"e": list(e), "c": str(c)} for e, c in self.terms()]

    def __str__(self) -> str:
        return _format_terms(self.terms(), ("x", "y"))

    def __repr__(self) -> str:
        return f"TruncSeries2({self.truncation}, {dict(self.terms())!r})"


# -- Sturm-chain root isolation ---------------------------------------------


@dataclass(frozen=True)
class RootInterval:
    """Open interval (lo, hi) containing exactly one root of the square-free
    part of the isolated polynomial; the part changes sign across it."""

    lo: Fraction
    hi: Fraction
    multiplicity_free: bool = True

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


@dataclass(frozen=True)
class IsolationResult:
    """Either "identically zero", or the complete list of isolating intervals
    for the distinct real roots in the scanned range (lo, hi]."""

    identically_zero: bool
    intervals: tuple[RootInterval, ...] = ()


def _primitive_positive(p: UniPoly) -> UniPoly:
    # scale by a positive rational: coprime integer coefficients, signs kept
    if p.is_zero():
        return p
    den = lcm(*(c.denominator for c in p.coefficients()))
    nums = [int(c * den) for c in p.coefficients()]
    g = 0
    for v in nums:
        g = gcd(g, v)
    return UniPoly([v // g for v in nums], p.var)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm chain: p, p', then negated Euclidean remainders, each rescaled
    to primitive integer coefficients (positive rescaling preserves all sign
    variations)."""
    chain = [_primitive_positive(p), _primitive_positive(p.derivative())]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        rem = chain[-2].divmod(chain[-1])[1]
        if rem.is_zero():
            break
        chain.append(_primitive_positive(-rem))
    return [q for q in chain if not q.is_zero()]


def _int_coeffs(p: UniPoly) -> list[int]:
    return [int(c) for c in p.coefficients()]


def _sign_at_rational(coeffs: list[int], num: int, den: int) -> int:
    # sign of P(num/den) via the homogenized integer value (den > 0)
    acc = 0
    den_pow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * den_pow
        den_pow *= den
    return (acc > 0) - (acc < 0)


def _variations_int(chain: Sequence[list[int]], at: Fraction) -> int:
    num, den = at.numerator, at.denominator
    signs = [s for s in (_sign_at_rational(c, num, den) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: Sequence[UniPoly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of the (square-free) chained polynomial in (lo, hi]."""
    chain_int = [_int_coeffs(_primitive_positive(q)) for q in chain]
    return _variations_int(chain_int, Fraction(lo)) - _variations_int(chain_int, Fraction(hi))


def sturm_isolate(
    p: UniPoly,
    lo: Fraction | int,
    hi: Fraction | int,
    width: Fraction | int = Fraction(1, 2**20),
) -> IsolationResult:
    """Isolate every distinct real root of p in (lo, hi].

    Returns disjoint open intervals, one per root, each no wider than
    ``width`` and with a strict sign change of the square-free part of p at
    its endpoints.  A root landing exactly on a probe point (including hi)
    is enclosed by a small interval straddling it, which may extend just past
    the scanned range.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    width = Fraction(width)
    if lo >= hi:
        raise ValueError(f"empty scan range: lo={lo} >= hi={hi}")
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero():
        return IsolationResult(identically_zero=True)

    q = square_free_part(p)
    if q.degree == 0:
        return IsolationResult(identically_zero=False, intervals=())
    chain = sturm_chain(q)
    chain_int = [_int_coeffs(c) for c in chain]
    q_int = chain_int[0]
    variation_cache: dict[Fraction, int] = {}

    def variations(at: Fraction) -> int:
        cached = variation_cache.get(at)
        if cached is None:
            cached = variation_cache[at] = _variations_int(chain_int, at)
        return cached

    def roots_in(a: Fraction, b: Fraction) -> int:
        return variations(a) - variations(b)

    def q_sign(at: Fraction) -> int:
        return _sign_at_rational(q_int, at.numerator, at.denominator)

    found: list[RootInterval] = []

    def emit_around(c: Fraction, left: Fraction, right: Fraction) -> tuple[Fraction, Fraction]:
        # c is an exact root; shrink a straddling interval until it isolates.
        rad = width / 2
        if c > left:
            rad = min(rad, (c - left) / 2)
        if c < right:
            rad = min(rad, (right - c) / 2)
        while True:
            a, b = c - rad, c + rad
            if q_sign(a) != 0 and q_sign(b) != 0 and roots_in(a, b) == 1:
                assert q_sign(a) != q_sign(b)
                found.append(RootInterval(a, b))
                return a, b
            rad /= 2

    def isolate(a: Fraction, b: Fraction) -> None:
        n = roots_in(a, b)
        if n == 0:
            return
        sa, sb = q_sign(a), q_sign(b)
        if n == 1 and b - a <= width and sa != 0 and sb != 0:
            assert sa != sb
            found.append(RootInterval(a, b))
            return
        if n == 1 and sb == 0 and b - a <= width:
            # the single counted root is b itself
            emit_around(b, a, b + (b - a))
            return
        mid = (a + b) / 2
        if q_sign(mid) == 0:
            lo2, hi2 = emit_around(mid, a, b)
            isolate(a, lo2)
            isolate(hi2, b)
            return
        isolate(a, mid)
        isolate(mid, b)

    isolate(lo, hi)
    found.sort(key=lambda r: (r.lo, r.hi))
    return IsolationResult(identically_zero=False, intervals=tuple(found))
