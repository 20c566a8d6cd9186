"""Sparse multivariate polynomials and rational functions over the rationals.

A polynomial lives in a fixed, ordered variable context.  Terms are stored
as a mapping from exponent tuples to nonzero :class:`fractions.Fraction`
coefficients, so equality is structural.  Monomials are ordered graded
lexicographically with the context order giving variable precedence.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Exponents = tuple  # tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational coefficients")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def monomial_key(exps: Exponents):
    """Sort key realising graded lex order (larger key = larger monomial)."""
    return (sum(exps), exps)


class Polynomial:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"monomial {exps} does not fit context {self.variables}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = as_fraction(c)
                if c:
                    clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        variables = tuple(variables)
        c = as_fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        idx = _index_of(variables, name)
        exps = tuple(1 if k == idx else 0 for k in range(len(variables)))
        return cls._raw(variables, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Exponents, c=1) -> "Polynomial":
        return cls(variables, {tuple(exps): c})

    @classmethod
    def linear(cls, variables: Sequence[str], coeffs: Mapping[int, object]) -> "Polynomial":
        """Linear form ``sum(coeffs[k] * variables[k])``."""
        variables = tuple(variables)
        n = len(variables)
        terms = {}
        for k, c in coeffs.items():
            c = as_fraction(c)
            if c:
                terms[tuple(1 if i == k else 0 for i in range(n))] = c
        return cls._raw(variables, terms)

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.variables!r}, {str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable context mismatch: {list(self.variables)} vs {list(other.variables)}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.variables, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.variables)
        return Polynomial._raw(self.variables, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        terms: dict = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        idx = _index_of(self.variables, name)
        return max((m[idx] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self.terms, key=monomial_key)
        return m, self.terms[m]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def used_variables(self) -> set:
        return {self.variables[k] for m in self.terms for k, e in enumerate(m) if e}

    def involves(self, names: Iterable[str]) -> bool:
        idx = [_index_of(self.variables, n) for n in names]
        return any(m[k] for m in self.terms for k in idx)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.variables, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient())

    # -- calculus and evaluation -------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        idx = _index_of(self.variables, name)
        return self.diff_index(idx)

    def diff_index(self, idx: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            e = m[idx]
            if e:
                terms[m[:idx] + (e - 1,) + m[idx + 1:]] = c * e
        return Polynomial._raw(self.variables, terms)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ValueError(f"no value assigned to {missing}")
        values = [as_fraction(point[v]) for v in self.variables]
        return self.evaluate_seq(values)

    def evaluate_seq(self, values: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def evaluate_float(self, values: Sequence[float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for v, e in zip(values, m):
                if e:
                    t *= v ** e
            total += t
        return total

    # -- exact division ----------------------------------------------------

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        q = self.try_divide(divisor)
        if q is None:
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def try_divide(self, divisor: "Polynomial") -> "Polynomial | None":
        divisor = self._coerce(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = divisor.leading_term()
        if len(divisor.terms) == 1:
            terms = {}
            for m, c in self.terms.items():
                d = tuple(a - b for a, b in zip(m, lm))
                if any(e < 0 for e in d):
                    return None
                terms[d] = c / lc
            return Polynomial._raw(self.variables, terms)
        rest = [(m, c) for m, c in divisor.terms.items() if m != lm]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=monomial_key)
            d = tuple(a - b for a, b in zip(m, lm))
            if any(e < 0 for e in d):
                return None
            qc = rem.pop(m) / lc
            quot[d] = qc
            for m2, c2 in rest:
                mm = tuple(a + b for a, b in zip(d, m2))
                s = rem.get(mm, 0) - qc * c2
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(self.variables, quot)


def _index_of(variables: Sequence[str], name: str) -> int:
    try:
        return variables.index(name)
    except ValueError:
        raise ValueError(f"unknown variable {name!r}; context is {list(variables)}") from None


def monomials_of_degree(nvars: int, degree: int, slots: Sequence[int] | None = None):
    """All exponent tuples of the given total degree, descending graded-lex.

    ``slots`` restricts the support to a subset of variable positions.
    """
    slots = list(range(nvars)) if slots is None else sorted(slots)
    out = []

    def rec(pos, left, acc):
        if pos == len(slots) - 1:
            acc[slots[pos]] = left
            out.append(tuple(acc))
            acc[slots[pos]] = 0
            return
        for e in range(left, -1, -1):
            acc[slots[pos]] = e
            rec(pos + 1, left - e, acc)
        acc[slots[pos]] = 0

    if not slots:
        return [(0,) * nvars] if degree == 0 else []
    rec(0, degree, [0] * nvars)
    return out


# -- text format -----------------------------------------------------------


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Render as e.g. ``v1^2 - 4*v0*v2`` (descending graded-lex order)."""
    if not p.terms:
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(p.variables, m) if e]
        if not factors:
            body = _format_coef(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coef(a)] + factors)
        if i == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a polynomial expression over ``variables``.

    Accepts the canonical output format plus parentheses, ``**`` and
    division by nonzero constants.
    """
    variables = tuple(variables)
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg} at column {exc.offset}") from None
    return _walk(tree.body, variables, text)


def _walk(node, variables, text) -> Polynomial:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed in {text!r}")
        return Polynomial.constant(variables, node.value)
    if isinstance(node, ast.Name):
        return Polynomial.var(variables, node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        p = _walk(node.operand, variables, text)
        return -p if isinstance(node.op, ast.USub) else p
    if isinstance(node, ast.BinOp):
        left = _walk(node.left, variables, text)
        if isinstance(node.op, ast.Pow):
            right = _walk(node.right, variables, text)
            if not right.is_constant() or right.constant_term().denominator != 1 or right.constant_term() < 0:
                raise ValueError(f"exponents must be non-negative integers in {text!r}")
            return left ** int(right.constant_term())
        right = _walk(node.right, variables, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right:
                raise ValueError(f"division only by nonzero constants in {text!r}")
            return left.scale(1 / right.constant_term())
    raise ValueError(f"unsupported syntax in polynomial {text!r}")


# -- rational functions ----------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials; equality by cross-multiplication."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer: Polynomial, denom: Polynomial | None = None):
        if denom is None:
            denom = Polynomial.constant(numer.variables, 1)
        numer._coerce(denom)
        if not denom:
            raise ZeroDivisionError("rational function with zero denominator")
        if not numer:
            denom = Polynomial.constant(numer.variables, 1)
        elif denom.is_constant():
            numer = numer.scale(1 / denom.constant_term())
            denom = Polynomial.constant(numer.variables, 1)
        else:
            q = numer.try_divide(denom)
            if q is not None:
                numer, denom = q, Polynomial.constant(numer.variables, 1)
            else:
                lc = denom.leading_coefficient()
                if lc != 1:
                    numer, denom = numer.scale(1 / lc), denom.scale(1 / lc)
        self.numer = numer
        self.denom = denom

    @property
    def variables(self):
        return self.numer.variables

    def __repr__(self):
        return f"RationalFunction({self.numer}, {self.denom})"

    def __str__(self):
        if self.denom.is_constant():
            return str(self.numer)
        return f"({self.numer})/({self.denom})"

    def is_zero(self) -> bool:
        return not self.numer

    def __bool__(self):
        return bool(self.numer)

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial.constant(self.variables, other))

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, Polynomial, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        return self.numer * other.denom == other.numer * self.denom

    __hash__ = None

    def __add__(self, other):
        other = self._lift(other)
        if self.denom == other.denom:
            return RationalFunction(self.numer + other.numer, self.denom)
        q = other.denom.try_divide(self.denom)
        if q is not None:
            return RationalFunction(self.numer * q + other.numer, other.denom)
        q = self.denom.try_divide(other.denom)
        if q is not None:
            return RationalFunction(self.numer + other.numer * q, self.denom)
        return RationalFunction(self.numer * other.denom + other.numer * self.denom, self.denom * other.denom)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numer, self.denom)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return RationalFunction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if not other.numer:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numer * other.denom, self.denom * other.numer)

    def diff(self, name: str) -> "RationalFunction":
        dn = self.numer.diff(name)
        dd = self.denom.diff(name)
        if not dd:
            return RationalFunction(dn, self.denom)
        return RationalFunction(dn * self.denom - self.numer * dd, self.denom * self.denom)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        d = self.denom.evaluate(point)
        if not d:
            raise ZeroDivisionError("point lies on the pole set of the denominator")
        return self.numer.evaluate(point) / d
