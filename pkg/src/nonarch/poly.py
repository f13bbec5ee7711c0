"""Dense polynomial helpers over Q and F_p, and the plain-text term grammar.

Polynomials are coefficient lists, lowest degree first.  Over Q the
coefficients are ``Fraction``; over F_p they are ints in ``range(p)``.

Grammar accepted by :func:`parse_terms`::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
    factor := NAME ['^' ['-'] INT]
    coeff  := INT ['/' INT]
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace can fail to match
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r} at offset {m.start(3)}")
            tokens.append(("op", ch))
    return tokens


def parse_terms(text: str) -> list[tuple[Fraction, dict[str, int]]]:
    """Parse ``text`` into ``(coefficient, {variable: exponent})`` pairs.

    Repeated variables inside one term are multiplied together; terms are
    returned in input order without collecting like monomials.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r} at token {pos}, got {tok[1]!r}")
        pos += 1
        return tok[1]

    def factor(monomial):
        name = take("name")
        exp = 1
        if peek() == ("op", "^"):
            take("op", "^")
            sign = 1
            if peek() == ("op", "-"):
                take("op", "-")
                sign = -1
            exp = sign * int(take("int"))
        monomial[name] = monomial.get(name, 0) + exp

    terms = []
    sign = 1
    if peek() in (("op", "+"), ("op", "-")):
        sign = -1 if take("op") == "-" else 1
    while True:
        coeff = Fraction(1)
        monomial: dict[str, int] = {}
        kind, _ = peek()
        if kind == "int":
            num = int(take("int"))
            den = 1
            if peek() == ("op", "/"):
                take("op", "/")
                den = int(take("int"))
                if den == 0:
                    raise ParseError("zero denominator")
            coeff = Fraction(num, den)
            if peek() == ("op", "*"):
                take("op", "*")
                factor(monomial)
            elif peek()[0] == "name":
                factor(monomial)  # allow "3T"
        elif kind == "name":
            factor(monomial)
        else:
            raise ParseError(f"expected a term at token {pos}, got {peek()[1]!r}")
        while peek() == ("op", "*"):
            take("op", "*")
            factor(monomial)
        terms.append((sign * coeff, {v: e for v, e in monomial.items() if e != 0}))
        if pos == len(tokens):
            return terms
        op = take("op")
        if op not in "+-":
            raise ParseError(f"expected '+' or '-', got {op!r}")
        sign = -1 if op == "-" else 1


def parse_poly(text: str, var: str = "T") -> list[Fraction]:
    """Parse a univariate polynomial in ``var`` (lowest degree first)."""
    coeffs: list[Fraction] = []
    for c, mono in parse_terms(text):
        extra = set(mono) - {var}
        if extra:
            raise ParseError(f"unknown variable(s) {sorted(extra)}; expected {var!r}")
        k = mono.get(var, 0)
        if k < 0:
            raise ParseError(f"negative exponent {var}^{k} in a polynomial")
        if len(coeffs) <= k:
            coeffs.extend([Fraction(0)] * (k + 1 - len(coeffs)))
        coeffs[k] += c
    return trim(coeffs)


def parse_laurent(text: str, nvars: int, prefix: str = "x") -> dict[tuple[int, ...], Fraction]:
    """Parse a Laurent polynomial in ``x1 .. xn`` into ``{exponents: coeff}``."""
    names = {f"{prefix}{i + 1}": i for i in range(nvars)}
    out: dict[tuple[int, ...], Fraction] = {}
    for c, mono in parse_terms(text):
        u = [0] * nvars
        for name, e in mono.items():
            if name not in names:
                raise ParseError(f"unknown variable {name!r}; expected one of {sorted(names)}")
            u[names[name]] += e
        key = tuple(u)
        out[key] = out.get(key, Fraction(0)) + c
    return {u: c for u, c in out.items() if c != 0}


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(coeffs: Sequence[Fraction], var: str = "T") -> str:
    """Inverse of :func:`parse_poly`; highest degree first."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _fmt_coeff(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- arithmetic over Q -------------------------------------------------------


def trim(f: Sequence) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    """Degree of a trimmed polynomial; -1 for zero."""
    return len(trim(f)) - 1


def padd(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def psub(f, g):
    return padd(f, [-c for c in g])


def pmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def pdivmod(f, g):
    """Quotient and remainder over a field (coefficients must support /)."""
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = g[-1]
    while len(r) >= len(g):
        c = Fraction(r[-1]) / lc
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
        r = trim(r)
    return trim(q), r


def resultant(f, g) -> Fraction:
    """Res(f, g) over Q by the Euclidean remainder sequence."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return Fraction(0)
    res = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return res * Fraction(g[0]) ** m
        _, r = pdivmod(f, g)
        if not r:
            return Fraction(0)
        k = len(r) - 1
        if (m * n) % 2:
            res = -res
        res *= Fraction(g[-1]) ** (m - k)
        f, g = g, r


def pxgcd(f, g):
    """Return (d, s, t) with s*f + t*g = d = gcd(f, g), d monic."""
    r0, r1 = trim([Fraction(c) for c in f]), trim([Fraction(c) for c in g])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0]


def taylor_shift(f, a, zero=0):
    """Coefficients of f(X + a) by Horner's scheme; works over any ring."""
    out: list = []
    for c in reversed(list(f)):
        # out <- out * (X + a) + c
        shifted = [zero] + out
        for i, b in enumerate(out):
            shifted[i] = shifted[i] + a * b
        if shifted:
            shifted[0] = shifted[0] + c
        else:
            shifted = [c]
        out = shifted
    return trim(out)


# -- arithmetic over F_p -----------------------------------------------------


def reduce_mod_p(f: Sequence[Fraction], p: int) -> list[int]:
    """Coefficient-wise reduction of a p-integral polynomial."""
    out = []
    for c in f:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return trim(out)


def _mp_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _mp_mod(f, g, p):
    f = _mp_trim([c % p for c in f])
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        k = len(f) - len(g)
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        _mp_trim(f)
    return f


def _mp_mulmod(f, g, m, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _mp_mod(out, m, p)


def _mp_powmod(f, n, m, p):
    result = [1]
    base = _mp_mod(list(f), m, p)
    while n:
        if n & 1:
            result = _mp_mulmod(result, base, m, p)
        base = _mp_mulmod(base, base, m, p)
        n >>= 1
    return result


def _mp_gcd(f, g, p):
    f, g = _mp_trim([c % p for c in f]), _mp_trim([c % p for c in g])
    while g:
        f, g = g, _mp_mod(f, g, p)
    return f


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p."""
    f = _mp_trim([c % p for c in f])
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _mp_powmod(x, p**n, f, p) != _mp_mod(list(x), f, p):
        return False
    for q in _prime_factors(n):
        h = _mp_powmod(x, p ** (n // q), f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        _mp_trim(diff)
        if len(_mp_gcd(f, diff, p)) != 1:
            return False
    return True


def mod_p_equal_up_to_unit(f: Sequence[int], g: Sequence[int], p: int) -> bool:
    """True iff f = c*g in F_p[x] for some nonzero c."""
    f, g = _mp_trim([c % p for c in f]), _mp_trim([c % p for c in g])
    if len(f) != len(g) or not f:
        return False
    c = f[-1] * pow(g[-1], -1, p) % p
    return all((a - c * b) % p == 0 for a, b in zip(f, g))
