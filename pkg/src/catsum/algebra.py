"""Exact arithmetic in the algebra Q[t, t^-1][H1, H2, s].

Generators:

  H1 = 2F1(-1/2, -1/2; 1; 16 t^2)
  H2 = 2F1(-1/2,  1/2; 2; 16 t^2)
  s  = sqrt(1 - 4t),  reduced through s^2 = 1 - 4t, so s-exponents stay in {0, 1}

An element is stored in normal form as a finite association

  (a, b, c)  ->  Laurent polynomial in t over Q        (c in {0, 1})

meaning  sum coeff * H1^a * H2^b * s^c.  Equality is equality of normal
forms, which is a faithful test because the three generators are
algebraically independent over Q(t).  The filtration degree assigns 2 to
H1 and H2 and 1 to s.

Evaluation at t = 1/4 sends s -> 0, H1 -> 4/pi, H2 -> 8/(3 pi) and every
Laurent coefficient to its exact rational value, landing in Q[1/pi]
(`PiPoly`).  No floating point is used anywhere in this module.

All values are immutable once constructed and every operation is pure, so
elements can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Laurent:
    """Sparse Laurent polynomial over Q: {exponent: coefficient}, no zeros stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            for k, v in terms.items():
                v = _frac(v)
                if v:
                    clean[int(k)] = v
        self.terms = clean

    @classmethod
    def const(cls, value) -> "Laurent":
        return cls({0: _frac(value)})

    @classmethod
    def t_power(cls, k: int, coeff=1) -> "Laurent":
        return cls({k: _frac(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        res = Laurent.__new__(Laurent)
        res.terms = out
        return res

    def __neg__(self) -> "Laurent":
        res = Laurent.__new__(Laurent)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[int, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                w = out.get(k, Fraction(0)) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        res = Laurent.__new__(Laurent)
        res.terms = out
        return res

    def scale(self, q) -> "Laurent":
        q = _frac(q)
        res = Laurent.__new__(Laurent)
        res.terms = {} if q == 0 else {k: v * q for k, v in self.terms.items()}
        return res

    def shift(self, k: int) -> "Laurent":
        """Multiply by t^k."""
        res = Laurent.__new__(Laurent)
        res.terms = {e + k: v for e, v in self.terms.items()}
        return res

    def eval_at(self, point: Fraction) -> Fraction:
        return sum((v * point**k for k, v in self.terms.items()), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                term = str(v)
            elif v == 1:
                term = mono
            elif v == -1:
                term = f"-{mono}"
            else:
                term = f"{v}*{mono}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    __repr__ = __str__


L_ZERO = Laurent()
L_ONE = Laurent.const(1)
# s^2 reduces to this polynomial.
L_S_SQUARED = Laurent({0: 1, 1: -4})


class AlgebraElement:
    """Normal form of an element of Q[t,t^-1][H1,H2,s], s-exponent in {0,1}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, int, int], Laurent] = {}
        if terms:
            for key, coeff in terms.items():
                a, b, c = key
                if a < 0 or b < 0 or c not in (0, 1):
                    raise ValueError(f"invalid generator exponents {key}")
                if not coeff.is_zero():
                    clean[(a, b, c)] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def from_laurent(cls, p: Laurent) -> "AlgebraElement":
        return cls({(0, 0, 0): p})

    @classmethod
    def from_rational(cls, q) -> "AlgebraElement":
        return cls({(0, 0, 0): Laurent.const(q)})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: Laurent = L_ONE) -> "AlgebraElement":
        return cls({(a, b, c): coeff})

    # -- ring structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, hash(v)) for k, v in self.terms.items()))

    @staticmethod
    def _coerce(value):
        if isinstance(value, AlgebraElement):
            return value
        if isinstance(value, (int, Fraction)):
            return AlgebraElement.from_rational(value)
        return None

    def __add__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            w = out[key] + coeff if key in out else coeff
            if w.is_zero():
                out.pop(key, None)
            else:
                out[key] = w
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, int, int], Laurent] = {}
        for (a1, b1, c1), p1 in self.terms.items():
            for (a2, b2, c2), p2 in other.terms.items():
                coeff = p1 * p2
                c = c1 + c2
                if c == 2:
                    coeff = coeff * L_S_SQUARED  # s^2 = 1 - 4t
                    c = 0
                key = (a1 + a2, b1 + b2, c)
                w = out[key] + coeff if key in out else coeff
                if w.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = w
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative powers are not defined in the algebra")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, q) -> "AlgebraElement":
        q = _frac(q)
        if q == 0:
            return ZERO
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = {k: v.scale(q) for k, v in self.terms.items()}
        return res

    def shift_t(self, k: int) -> "AlgebraElement":
        """Multiply by t^k (k may be negative)."""
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = {key: v.shift(k) for key, v in self.terms.items()}
        return res

    def mul_laurent(self, p: Laurent) -> "AlgebraElement":
        if p.is_zero():
            return ZERO
        out = {}
        for key, coeff in self.terms.items():
            w = coeff * p
            if not w.is_zero():
                out[key] = w
        res = AlgebraElement.__new__(AlgebraElement)
        res.terms = out
        return res

    def __truediv__(self, other) -> "AlgebraElement":
        """Division by a nonzero rational or a rational multiple of t^k."""
        if isinstance(other, (int, Fraction)):
            q = _frac(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / q)
        if isinstance(other, AlgebraElement):
            if list(other.terms) == [(0, 0, 0)] and len(other.terms[(0, 0, 0)].terms) == 1:
                ((k, v),) = other.terms[(0, 0, 0)].terms.items()
                return self.scale(1 / v).shift_t(-k)
            raise ValueError("division only by rational multiples of t^k")
        return NotImplemented

    # -- structure queries ----------------------------------------------

    def degree(self):
        """Filtration degree max(2a + 2b + c), or None for the zero element.

        This is the degree of the stored normal form.  Algebraic
        independence of H1 and H2 over Q(t) makes it the minimum over all
        polynomial representations when no s-term is present; with an
        s-term that minimality additionally needs s to be transcendental
        over Q(t)(H1, H2), which we do not prove, so callers should read
        this as the normal-form degree.
        """
        if not self.terms:
            return None
        return max(2 * a + 2 * b + c for (a, b, c) in self.terms)

    def s_component(self) -> "AlgebraElement":
        """The part of the element with s-exponent 1."""
        return AlgebraElement({k: v for k, v in self.terms.items() if k[2] == 1})

    def min_t_exponent(self):
        if not self.terms:
            return None
        return min(v.min_exp() for v in self.terms.values())

    def substitute_sqrt_t(self) -> "AlgebraElement":
        """Rewrite in the variable u = t^2, i.e. halve every t-exponent.

        Only valid when every stored exponent is even (true for sums of trees
        without half-edge, whose series live in Q[[t^2]]).
        """
        out = {}
        for key, coeff in self.terms.items():
            halved = {}
            for e, v in coeff.terms.items():
                if e % 2:
                    raise ValueError(f"odd t-exponent {e}: no sqrt-t form")
                halved[e // 2] = v
            out[key] = Laurent(halved)
        return AlgebraElement(out)

    # -- evaluation -----------------------------------------------------

    def eval_quarter(self) -> "PiPoly":
        """Exact substitution t -> 1/4, H1 -> 4/pi, H2 -> 8/(3 pi), s -> 0."""
        quarter = Fraction(1, 4)
        out: dict[int, Fraction] = {}
        for (a, b, c), coeff in self.terms.items():
            if c == 1:
                continue  # s(1/4) = 0
            value = coeff.eval_at(quarter) * Fraction(4) ** a * Fraction(8, 3) ** b
            d = a + b
            w = out.get(d, Fraction(0)) + value
            if w:
                out[d] = w
            else:
                out.pop(d, None)
        return PiPoly(out)

    # -- rendering -------------------------------------------------------

    def _sorted_keys(self):
        return sorted(self.terms, reverse=True)

    def __str__(self):
        """Canonical flat rendering, decreasing (a,b,c) then decreasing exponent."""
        if not self.terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            a, b, c = key
            gens = "*".join(
                ([f"H1^{a}"] if a > 1 else ["H1"] if a == 1 else [])
                + ([f"H2^{b}"] if b > 1 else ["H2"] if b == 1 else [])
                + (["s"] if c else [])
            )
            coeff = self.terms[key]
            for e in sorted(coeff.terms, reverse=True):
                v = coeff.terms[e]
                factors = []
                if v == -1 and (e != 0 or gens):
                    sign = "-"
                elif v != 1 or (e == 0 and not gens):
                    sign = ""
                    factors.append(str(v))
                else:
                    sign = ""
                if e:
                    factors.append("t" if e == 1 else f"t^{e}")
                if gens:
                    factors.append(gens)
                parts.append(sign + "*".join(factors))
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    __repr__ = __str__

    def pretty(self) -> str:
        """Render as (integer-coefficient sum)/(D*t^m), e.g. `(H1 - 1)/(4*t^2)`."""
        if not self.terms:
            return "0"
        m = min(0, self.min_t_exponent())
        denoms = [v.denominator for p in self.terms.values() for v in p.terms.values()]
        lead = 1
        for d in denoms:
            lead = lead * d // _gcd(lead, d)
        num = self.scale(lead).shift_t(-m)
        num_str = str(num)
        if lead == 1 and m == 0:
            return num_str
        den_factors = [] if lead == 1 else [str(lead)]
        if m:
            den_factors.append("t" if m == -1 else f"t^{-m}")
        return f"({num_str})/({'*'.join(den_factors)})"

    def to_json(self):
        out = []
        for key in self._sorted_keys():
            a, b, c = key
            coeff = {str(e): str(v) for e, v in sorted(self.terms[key].terms.items(), reverse=True)}
            out.append({"h1": a, "h2": b, "s": c, "coeff": coeff})
        return {"terms": out}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


ZERO = AlgebraElement.zero()
ONE = AlgebraElement.from_rational(1)
H1 = AlgebraElement.monomial(1, 0, 0)
H2 = AlgebraElement.monomial(0, 1, 0)
SQRT_1_4T = AlgebraElement.monomial(0, 0, 1)


def catalan_gf() -> AlgebraElement:
    """The Catalan generating function (1 - s)/(2t)."""
    return (ONE - SQRT_1_4T).scale(Fraction(1, 2)).shift_t(-1)


_HK_CACHE: list[AlgebraElement] = [H1, H2]


def hypergeom_hk(k: int) -> AlgebraElement:
    """2F1(-1/2, K-1/2; K+1; 16 t^2) in normal form, via the contiguity recurrence.

    For K >= 2 the three-term relation
      (K+1/2)(K+5/2)/(K+2) * z * H(K+2) = (K+1)(1+z) H(K+1) - (K+1) H(K)
    with z = 16 t^2 expresses everything over H(0) = H1 and H(1) = H2.
    """
    if k < 0:
        raise ValueError("K must be nonnegative")
    while len(_HK_CACHE) <= k:
        m = len(_HK_CACHE) - 2  # computing H(m+2)
        one_plus_z = Laurent({0: 1, 2: 16})
        rhs = _HK_CACHE[m + 1].mul_laurent(one_plus_z) - _HK_CACHE[m]
        # divide by (m+1/2)(m+5/2)/((m+1)(m+2)) and by z = 16 t^2
        factor = Fraction(m + 1) * (m + 2) / (Fraction(2 * m + 1, 2) * Fraction(2 * m + 5, 2))
        _HK_CACHE.append(rhs.scale(factor * Fraction(1, 16)).shift_t(-2))
    return _HK_CACHE[k]


def gauss_value_hk(k: int) -> "PiPoly":
    """Exact value of 2F1(-1/2, K-1/2; K+1; 1) as a rational multiple of 1/pi.

    Gamma(K+1)Gamma(2)/(Gamma(K+3/2)Gamma(3/2)) = 4^(K+1) (K!)^2 / (2K+1)! * (1/pi).
    """
    if k < 0:
        raise ValueError("K must be nonnegative")
    coeff = Fraction(4 ** (k + 1) * factorial(k) ** 2, factorial(2 * k + 1))
    return PiPoly({1: coeff})


def eval_quarter(x: AlgebraElement) -> "PiPoly":
    return x.eval_quarter()


# pi to 100 decimal places, used only for decimal display of exact values.
PI_DIGITS = (
    "3."
    "1415926535897932384626433832795028841971693993751"
    "058209749445923078164062862089986280348253421170679"
)
_PI_FRACTION = Fraction(int(PI_DIGITS.replace(".", "")), 10 ** (len(PI_DIGITS) - 2))


class PiPoly:
    """Polynomial in the formal symbol 1/pi with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for d, v in coeffs.items():
                d = int(d)
                if d < 0:
                    raise ValueError("negative 1/pi exponent")
                v = _frac(v)
                if v:
                    clean[d] = v
        self.coeffs = clean

    @classmethod
    def const(cls, q) -> "PiPoly":
        return cls({0: _frac(q)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def __eq__(self, other):
        return isinstance(other, PiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "PiPoly") -> "PiPoly":
        out = dict(self.coeffs)
        for d, v in other.coeffs.items():
            w = out.get(d, Fraction(0)) + v
            if w:
                out[d] = w
            else:
                out.pop(d, None)
        return PiPoly(out)

    def __neg__(self) -> "PiPoly":
        return PiPoly({d: -v for d, v in self.coeffs.items()})

    def __sub__(self, other: "PiPoly") -> "PiPoly":
        return self + (-other)

    def __mul__(self, other: "PiPoly") -> "PiPoly":
        out: dict[int, Fraction] = {}
        for d1, v1 in self.coeffs.items():
            for d2, v2 in other.coeffs.items():
                d = d1 + d2
                w = out.get(d, Fraction(0)) + v1 * v2
                if w:
                    out[d] = w
                else:
                    out.pop(d, None)
        return PiPoly(out)

    def scale(self, q) -> "PiPoly":
        q = _frac(q)
        return PiPoly({d: v * q for d, v in self.coeffs.items()} if q else None)

    def __pow__(self, n: int) -> "PiPoly":
        result = PiPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __str__(self):
        """Canonical ascending rendering: c0 + c1*pi^-1 + c2*pi^-2 + ..."""
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            v = self.coeffs[d]
            parts.append(str(v) if d == 0 else f"{v}*pi^-{d}")
        return " + ".join(parts)

    __repr__ = __str__

    def pretty(self) -> str:
        """Human form, highest 1/pi power first, e.g. `16/pi - 4`."""
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            v = self.coeffs[d]
            sign = "-" if v < 0 else "+"
            v = abs(v)
            if d == 0:
                body = str(v)
            else:
                pi_part = "pi" if d == 1 else f"pi^{d}"
                if v.denominator == 1:
                    body = f"{v.numerator}/{pi_part}"
                else:
                    body = f"{v.numerator}/({v.denominator}*{pi_part})"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_fraction(self) -> Fraction:
        """Approximate rational value using the 100-digit pi constant (display only)."""
        return sum(
            (v / _PI_FRACTION**d for d, v in self.coeffs.items()),
            Fraction(0),
        )

    def to_decimal(self, digits: int = 12) -> str:
        """Truncated decimal expansion with `digits` places after the point."""
        value = self.to_fraction()
        sign = "-" if value < 0 else ""
        value = abs(value)
        scaled = value.numerator * 10**digits // value.denominator
        int_part, frac_part = divmod(scaled, 10**digits)
        return f"{sign}{int_part}.{frac_part:0{digits}d}"

    def to_json(self):
        return [[d, str(self.coeffs[d])] for d in sorted(self.coeffs, reverse=True)]
