"""q-numbers and the scalar field they live in.

Two backends share one interface.  The float backend computes with Python
floats.  The exact backend computes with :class:`Radical`, a finite sum
``sum(c_i * sqrt(r_i))`` with rational ``c_i`` and distinct squarefree
integers ``r_i``.  Every Clebsch-Gordan type quantity of U_q(su(2)) and
U_q(su(3)) at rational q lands in this field.
"""

import math
import re
import threading
from fractions import Fraction
from functools import lru_cache

import sympy


class DomainError(ValueError):
    """Input outside the domain of a formula (bad label, q <= 0, ...)."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# ---------------------------------------------------------------- HalfInt

class HalfInt:
    """Exact half-integer, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            self.twice = value.twice
            return
        try:
            f = Fraction(value.strip() if isinstance(value, str) else value)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse {value!r} as a half-integer") from exc
        if (2 * f).denominator != 1:
            raise DomainError(f"{value!r} is not a half-integer")
        self.twice = int(2 * f)

    @classmethod
    def from_twice(cls, twice):
        h = cls.__new__(cls)
        h.twice = int(twice)
        return h

    @property
    def value(self):
        return Fraction(self.twice, 2)

    def is_integer(self):
        return self.twice % 2 == 0

    def __index__(self):
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __int__(self):
        return self.__index__()

    def __float__(self):
        return self.twice / 2

    def __hash__(self):
        return hash(self.value)

    def _other(self, other):
        if isinstance(other, HalfInt):
            return other.twice
        if isinstance(other, int):
            return 2 * other
        f = Fraction(other)
        if (2 * f).denominator == 1:
            return int(2 * f)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return self.value + other
        return HalfInt.from_twice(self.twice + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return self.value - other
        return HalfInt.from_twice(self.twice - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return other - self.value
        return HalfInt.from_twice(o - self.twice)

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt.from_twice(self.twice * other)
        return self.value * Fraction(other.value if isinstance(other, HalfInt) else other)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.value == Fraction(other.value if isinstance(other, HalfInt) else other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.value < Fraction(other.value if isinstance(other, HalfInt) else other)

    def __le__(self, other):
        return self.value <= Fraction(other.value if isinstance(other, HalfInt) else other)

    def __gt__(self, other):
        return self.value > Fraction(other.value if isinstance(other, HalfInt) else other)

    def __ge__(self, other):
        return self.value >= Fraction(other.value if isinstance(other, HalfInt) else other)

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


def half(x):
    """Coerce an int, Fraction, string or HalfInt to an exact Fraction on the half-integer lattice."""
    return HalfInt(x).value


def half_range(lo, hi):
    """Half-integers lo, lo+1, ..., up to hi (inclusive), as Fractions."""
    x = Fraction(lo)
    hi = Fraction(hi)
    while x <= hi:
        yield x
        x += 1


def sign(n):
    """(-1)**n for an integer-valued n."""
    n = Fraction(n)
    if n.denominator != 1:
        raise DomainError(f"phase exponent {n} is not an integer")
    return -1 if n.numerator % 2 else 1


# ------------------------------------------------------- squarefree parts

_PRIMES_LOCK = threading.Lock()
_known_primes = set(sympy.primerange(2, 2000))


def register_primes(n):
    """Factor ``n`` once and remember its primes for later squarefree splits."""
    n = abs(int(n))
    if n < 2:
        return
    found = sympy.factorint(n)
    with _PRIMES_LOCK:
        _known_primes.update(found)


def _squarefree_split(n):
    """Return (s, r) with n == s*s*r and r squarefree, for an integer n >= 1."""
    if n == 1:
        return 1, 1
    s, r = 1, 1
    for p in sorted(_known_primes):
        if n == 1:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    if n > 1:
        root = math.isqrt(n)
        if root * root == n:
            s *= root
        else:
            found = sympy.factorint(n)
            with _PRIMES_LOCK:
                _known_primes.update(found)
            for p, e in found.items():
                s *= p ** (e // 2)
                if e % 2:
                    r *= p
    return s, r


@lru_cache(maxsize=65536)
def _split_cached(n):
    return _squarefree_split(n)


def _coprime_base(nums):
    """Pairwise coprime integers > 1 generating every element of ``nums`` multiplicatively."""
    base = []
    for n in nums:
        todo = [n]
        while todo:
            x = todo.pop()
            if x == 1:
                continue
            for i, b in enumerate(base):
                g = math.gcd(x, b)
                if g > 1:
                    base.pop(i)
                    todo.extend(y for y in (g, b // g, x // g) if y > 1)
                    break
            else:
                base.append(x)
    return base


# ---------------------------------------------------------------- Radical

class Radical:
    """Exact element sum(c * sqrt(r)) with Fraction c and squarefree int r.

    The representation is canonical, so equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, value=0):
        if isinstance(value, Radical):
            self.terms = dict(value.terms)
        else:
            f = Fraction(value)
            self.terms = {1: f} if f else {}

    @classmethod
    def _raw(cls, terms):
        r = cls.__new__(cls)
        r.terms = {k: v for k, v in terms.items() if v}
        return r

    @classmethod
    def sqrt_of(cls, x):
        """sqrt of a nonnegative rational as a canonical monomial."""
        x = Fraction(x)
        if x < 0:
            raise DomainError(f"sqrt of negative number {x}")
        if x == 0:
            return cls()
        # sqrt(a/b) = sqrt(a*b)/b
        s, r = _split_cached(x.numerator * x.denominator)
        return cls._raw({r: Fraction(s, x.denominator)})

    # -- inspection
    def is_rational(self):
        return all(k == 1 for k in self.terms)

    def rational(self):
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.terms.get(1, Fraction(0))

    def is_monomial(self):
        return len(self.terms) <= 1

    # -- arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, Radical):
            return other
        if isinstance(other, (int, Fraction)):
            return Radical(other)
        if isinstance(other, HalfInt):
            return Radical(other.value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return Radical._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Radical._raw({k: -v for k, v in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Radical._raw({k: v * other for k, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in o.terms.items():
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                t[r] = t.get(r, 0) + c1 * c2 * g
        return Radical._raw(t)

    __rmul__ = __mul__

    def _conjugate(self, d):
        return Radical._raw({k: (-v if k % d == 0 else v) for k, v in self.terms.items()})

    def inverse(self):
        if not self.terms:
            raise ZeroDivisionError("division by exact zero")
        if len(self.terms) == 1:
            (r, c), = self.terms.items()
            return Radical._raw({r: 1 / (c * r)})
        num = Radical(1)
        den = self
        while not den.is_rational():
            base = _coprime_base([k for k in den.terms if k != 1])
            conj = den._conjugate(base[0])
            num = num * conj
            den = den * conj
        return num * (1 / den.rational())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Radical._raw({k: v / other for k, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Radical(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) == other
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational())
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def _interval(self, bits):
        lo = hi = Fraction(0)
        scale = 1 << bits
        for r, c in self.terms.items():
            s = math.isqrt(r * scale * scale)
            a, b = Fraction(s, scale), Fraction(s + (s * s != r * scale * scale), scale)
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            else:
                lo, hi = lo + c * b, hi + c * a
        return lo, hi

    def sign(self):
        """-1, 0 or +1, decided exactly by interval refinement."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            return 1 if next(iter(self.terms.values())) > 0 else -1
        bits = 64
        while True:
            lo, hi = self._interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        total = 0.0
        for r, c in self.terms.items():
            if r == 1:
                total += float(c)
            else:
                bits = 64
                s = math.isqrt(r << (2 * bits))
                total += float(c * Fraction(s, 1 << bits))
        return total

    def sqrt(self):
        if self.sign() < 0:
            raise DomainError(f"sqrt of negative value {self}")
        if self.is_rational():
            return Radical.sqrt_of(self.rational())
        raise DomainError(
            f"sqrt of irrational value {self} leaves the radical field")

    # -- text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r in sorted(self.terms):
            c = self.terms[r]
            mag = abs(c)
            if r == 1:
                body = str(mag)
            elif mag == 1:
                body = f"sqrt({r})"
            else:
                body = f"{mag}*sqrt({r})"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    def __repr__(self):
        return f"Radical({str(self)!r})"

    _TERM = re.compile(r"\s*([+-]?)\s*([0-9/]*)\s*\*?\s*(?:sqrt\(\s*([0-9/]+)\s*\))?\s*")

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``; also accepts rational radicands like ``-3/7*sqrt(2/5)``."""
        text = text.strip()
        if not text:
            raise DomainError("empty radical string")
        total = cls()
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise DomainError(f"cannot parse radical {text!r}")
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            term = cls.sqrt_of(Fraction(m.group(3))) * coef if m.group(3) else cls(coef)
            total = total + (-term if m.group(1) == "-" else term)
            pos = m.end()
        return total


# ----------------------------------------------------------------- QValue

class QValue:
    """The deformation parameter together with the scalar backend.

    ``QValue("7/10", "exact")`` computes in the radical field,
    ``QValue(0.7)`` in floating point.  q = 1 is the classical branch.
    """

    __slots__ = ("q", "backend", "_sqrt_q")

    def __init__(self, q, backend="float"):
        if backend not in ("float", "exact"):
            raise DomainError(f"unknown backend {backend!r}")
        if isinstance(q, str):
            q = q.strip()
        if backend == "exact":
            try:
                qq = Fraction(q)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise DomainError(f"exact backend needs rational q, got {q!r}") from exc
            if isinstance(q, float) and Fraction(q).limit_denominator(10**6) != qq:
                raise DomainError(f"exact backend needs rational q, got {q!r}")
        else:
            try:
                qq = float(Fraction(q)) if isinstance(q, str) else float(q)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise DomainError(f"cannot parse q = {q!r}") from exc
        if not qq > 0:
            raise DomainError(f"q must be positive, got {q!r}")
        self.q = qq
        self.backend = backend
        self._sqrt_q = None
        if backend == "exact":
            register_primes(qq.numerator)
            register_primes(qq.denominator)

    @property
    def exact(self):
        return self.backend == "exact"

    @property
    def classical(self):
        return self.q == 1

    def __eq__(self, other):
        return isinstance(other, QValue) and (self.q, self.backend) == (other.q, other.backend)

    def __hash__(self):
        return hash((self.q, self.backend))

    def __repr__(self):
        return f"QValue({str(self.q)!r}, {self.backend!r})"

    def label(self):
        return str(self.q) if self.exact else repr(self.q)

    def inverse(self):
        return QValue(1 / self.q, self.backend)

    def as_float_backend(self):
        return QValue(float(self.q), "float")

    # -- scalar constructors
    def scalar(self, x):
        if self.exact:
            return x if isinstance(x, Radical) else Radical(Fraction(x))
        return float(x)

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def sqrt(self, x):
        if self.exact:
            return x.sqrt() if isinstance(x, Radical) else Radical.sqrt_of(x)
        if x < 0:
            if x > -1e-12:
                return 0.0
            raise DomainError(f"sqrt of negative value {x}")
        return math.sqrt(x)

    def sqrt_q(self):
        if self._sqrt_q is None:
            self._sqrt_q = self.sqrt(self.q)
        return self._sqrt_q


def as_scalar_float(x):
    return float(x)


def q_pow(q, e):
    """q**e for a half-integer exponent e."""
    e = half(e)
    if q.classical:
        return q.one()
    n = e.numerator if e.denominator == 1 else (e.numerator - 1) // 2
    if q.exact:
        out = Radical(q.q ** n)
    else:
        out = q.q ** n
    if e.denominator == 2:
        out = out * q.sqrt_q()
    return out


def _register_qint_primes(q, n):
    # Register the primes of the homogeneous cyclotomic pieces of
    # a^(2n) - b^(2n).  Later squarefree splits of products of q-numbers
    # then never need to factor huge integers.
    a, b = q.q.numerator, q.q.denominator
    for d in sympy.divisors(2 * n):
        poly = sympy.cyclotomic_poly(d, sympy.Symbol("x"), polys=True)
        coeffs = poly.all_coeffs()
        deg = len(coeffs) - 1
        val = sum(int(c) * a ** (deg - i) * b ** i for i, c in enumerate(coeffs))
        register_primes(val)


_QINT_LOCK = threading.Lock()
_qint_registered = set()


@lru_cache(maxsize=None)
def q_int(n, q):
    """The q-number [n] = (q^n - q^-n)/(q - 1/q); n may be a negative or half integer."""
    n = half(n)
    if not isinstance(q, QValue):
        raise DomainError(f"expected QValue, got {q!r}")
    if q.classical:
        return q.scalar(n)
    if n < 0:
        return -q_int(-n, q)
    if n == 0:
        return q.zero()
    if q.exact:
        key = (q.q, int(2 * n))
        if key not in _qint_registered:
            _register_qint_primes(q, int(2 * n))
            with _QINT_LOCK:
                _qint_registered.add(key)
        if n.denominator == 1:
            x = q.q
            return Radical((x ** int(n) - x ** -int(n)) / (x - 1 / x))
        return (q_pow(q, n) - q_pow(q, -n)) / (q.q - 1 / q.q)
    x = q.q
    return (x ** float(n) - x ** -float(n)) / (x - 1 / x)


@lru_cache(maxsize=None)
def q_factorial(n, q):
    """[n]! = [1][2]...[n], with [0]! = 1."""
    n = Fraction(n)
    if n.denominator != 1:
        raise DomainError(f"q-factorial of non-integer {n}")
    if n < 0:
        raise DomainError(f"q-factorial of negative integer {n}")
    if n == 0:
        return q.one()
    return q_factorial(n - 1, q) * q_int(n, q)


def q_fact_or_none(n, q):
    """[n]! or None when n is negative or fractional (summand is skipped)."""
    n = Fraction(n)
    if n < 0 or n.denominator != 1:
        return None
    return q_factorial(n, q)


def to_float(x):
    return float(x)


def is_zero(x, tol=0.0):
    if isinstance(x, Radical):
        return not x
    return abs(x) <= tol


def format_exact(x):
    """Canonical string of a scalar; floats use repr."""
    if isinstance(x, Radical):
        return str(x)
    return repr(float(x))
