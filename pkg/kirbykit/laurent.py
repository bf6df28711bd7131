import numbers
import re
import sys
from collections.abc import Mapping

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .errors import ValidationError

variable_re = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
transformations = standard_transformations + (convert_xor,)


def _check_integer(value, what):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValidationError(f"{what} must be an integer, got {value!r}")

    return int(value)


class Monomial(Mapping):
    """product of variables raised to integer powers

    Zero exponents are never stored, so ``Monomial()`` is the unit monomial.

    Parameters
    ----------
    exponents : mapping of str to int, optional
        The exponent of each variable.
    **kwargs
        Additional exponents, by variable name.
    """

    __slots__ = ("_exponents", "_hash")

    def __init__(self, exponents=None, **kwargs):
        items = dict(exponents if exponents is not None else {}, **kwargs)

        exponents = {}
        for name, exponent in items.items():
            if not isinstance(name, str) or variable_re.fullmatch(name) is None:
                raise ValidationError(f"invalid variable name: {name!r}")

            exponent = _check_integer(exponent, f"exponent of {name!r}")
            if exponent != 0:
                exponents[sys.intern(name)] = exponent

        self._exponents = dict(sorted(exponents.items()))
        self._hash = hash(tuple(self._exponents.items()))

    @classmethod
    def parse(cls, text):
        """parse a single monomial like ``"t^2*u^-1"``"""
        poly = LaurentPoly.parse(text)
        if len(poly) != 1 or poly.coefficient(next(iter(poly))) != 1:
            raise ValidationError(f"not a monomial: {text!r}")

        return next(iter(poly))

    @classmethod
    def from_vector(cls, basis, vector):
        """build a monomial from an exponent vector over an ordered basis"""
        if len(basis) != len(vector):
            raise ValidationError(
                f"exponent vector {list(vector)!r} does not match basis {list(basis)!r}"
            )

        return cls(dict(zip(basis, vector)))

    def vector(self, basis):
        """exponent vector of the monomial over an ordered basis"""
        unknown = set(self._exponents) - set(basis)
        if unknown:
            raise ValidationError(
                f"variables {sorted(unknown)!r} are not part of the basis {list(basis)!r}"
            )

        return tuple(self._exponents.get(name, 0) for name in basis)

    def __getitem__(self, key):
        return self._exponents[key]

    def __iter__(self):
        return iter(self._exponents)

    def __len__(self):
        return len(self._exponents)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented

        return self._exponents == other._exponents

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented

        exponents = dict(self._exponents)
        for name, exponent in other.items():
            exponents[name] = exponents.get(name, 0) + exponent

        return Monomial(exponents)

    def __pow__(self, power):
        power = _check_integer(power, "power")
        return Monomial({name: exponent * power for name, exponent in self.items()})

    def inverse(self):
        return self**-1

    @property
    def degree(self):
        return sum(self._exponents.values())

    @property
    def is_unit(self):
        return not self._exponents

    def to_sympy(self):
        return sympy.Mul(
            *(sympy.Symbol(name) ** exponent for name, exponent in self.items())
        )

    def __str__(self):
        if self.is_unit:
            return "1"

        return "*".join(
            name if exponent == 1 else f"{name}^{exponent}"
            for name, exponent in self.items()
        )

    def __repr__(self):
        return f"Monomial({self._exponents!r})"


def _sort_key(monomial, names):
    return (monomial.degree, tuple(monomial.get(name, 0) for name in names))


class LaurentPoly(Mapping):
    """Laurent polynomial with integer coefficients

    Maps monomials to their nonzero coefficients. Instances are immutable and
    two equal polynomials always have identical term maps.

    Parameters
    ----------
    terms : mapping of Monomial to int, optional
        The coefficient of each monomial. Zero coefficients are dropped and
        keys may also be plain mappings of variable names to exponents.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        canonical = {}
        for monomial, coefficient in (terms or {}).items():
            if not isinstance(monomial, Monomial):
                monomial = Monomial(monomial)

            coefficient = _check_integer(coefficient, f"coefficient of {monomial}")
            canonical[monomial] = canonical.get(monomial, 0) + coefficient

        names = sorted({name for monomial in canonical for name in monomial})
        self._terms = {
            monomial: coefficient
            for monomial, coefficient in sorted(
                canonical.items(),
                key=lambda item: _sort_key(item[0], names),
                reverse=True,
            )
            if coefficient != 0
        }
        self._hash = hash(frozenset(self._terms.items()))

    @classmethod
    def constant(cls, value):
        return cls({Monomial(): value})

    @classmethod
    def monomial(cls, monomial, coefficient=1):
        if not isinstance(monomial, Monomial):
            monomial = Monomial(monomial)

        return cls({monomial: coefficient})

    @classmethod
    def from_sympy(cls, expr, variables=None):
        """convert a sympy expression in the given symbols

        Parameters
        ----------
        expr : sympy.Expr
        variables : iterable of str, optional
            The allowed variable names. If omitted, every free symbol is
            allowed.

        Raises
        ------
        ValidationError
            If the expression is not a Laurent polynomial with integer
            coefficients.
        """
        allowed = None if variables is None else set(variables)

        terms = {}
        for term in sympy.Add.make_args(sympy.expand(expr)):
            coefficient, rest = term.as_coeff_Mul()
            if not coefficient.is_Integer:
                raise ValidationError(f"non-integer coefficient in term {term}")

            exponents = {}
            if rest != 1:
                for base, exponent in rest.as_powers_dict().items():
                    if not base.is_Symbol:
                        raise ValidationError(f"not a Laurent monomial: {rest}")
                    if not exponent.is_Integer:
                        raise ValidationError(f"non-integer exponent in term {term}")
                    if allowed is not None and base.name not in allowed:
                        raise ValidationError(f"unknown variable {base.name!r}")

                    exponents[base.name] = int(exponent)

            monomial = Monomial(exponents)
            terms[monomial] = terms.get(monomial, 0) + int(coefficient)

        return cls(terms)

    @classmethod
    def parse(cls, text, variables=None):
        """parse the textual form, e.g. ``"3*t^2 - 2*t^-1 + 1"``

        Parameters
        ----------
        text : str
        variables : iterable of str, optional
            The allowed variable names. By default every name in ``text`` is
            a variable.
        """
        if not isinstance(text, str):
            raise ValidationError(f"cannot parse {text!r} as a Laurent polynomial")

        names = set(variable_re.findall(text))
        if variables is not None and not names <= set(variables):
            unknown = sorted(names - set(variables))
            raise ValidationError(f"unknown variables {unknown!r} in {text!r}")

        local_dict = {name: sympy.Symbol(name) for name in names}
        try:
            expr = parse_expr(
                text,
                local_dict=local_dict,
                transformations=transformations,
                evaluate=True,
            )
        except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
            raise ValidationError(f"cannot parse {text!r}: {e}") from e

        return cls.from_sympy(expr, variables=names)

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __hash__(self):
        return self._hash

    def coefficient(self, monomial):
        if not isinstance(monomial, Monomial):
            monomial = Monomial(monomial)

        return self._terms.get(monomial, 0)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def variables(self):
        return tuple(sorted({name for monomial in self._terms for name in monomial}))

    def degree_span(self, variable):
        """smallest and largest exponent of ``variable``"""
        if self.is_zero:
            raise ValueError("the zero polynomial has no degree")

        exponents = [monomial.get(variable, 0) for monomial in self._terms]
        return min(exponents), max(exponents)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented

        return self._terms == other._terms

    def __add__(self, other):
        return lp_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return lp_sub(self, _coerce(other))

    def __rsub__(self, other):
        return lp_sub(_coerce(other), self)

    def __neg__(self):
        return lp_neg(self)

    def __mul__(self, other):
        return lp_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, power):
        power = _check_integer(power, "power")
        if power < 0:
            if len(self) != 1 or abs(next(iter(self.values()))) != 1:
                raise ValueError("only unit monomials can be inverted")

            ((monomial, coefficient),) = self.items()
            return LaurentPoly({monomial.inverse(): coefficient}) ** -power

        result = LaurentPoly.constant(1)
        for _ in range(power):
            result = lp_mul(result, self)
        return result

    def to_sympy(self):
        return sympy.Add(
            *(coefficient * monomial.to_sympy() for monomial, coefficient in self.items())
        )

    def __str__(self):
        if self.is_zero:
            return "0"

        parts = []
        for index, (monomial, coefficient) in enumerate(self.items()):
            magnitude = abs(coefficient)
            if monomial.is_unit:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = f"{magnitude}*{monomial}"

            if index == 0:
                parts.append(f"-{body}" if coefficient < 0 else body)
            else:
                parts.append(f"- {body}" if coefficient < 0 else f"+ {body}")

        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, Monomial):
        return LaurentPoly.monomial(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return LaurentPoly.constant(value)

    raise TypeError(f"cannot combine a Laurent polynomial with {value!r}")


def lp_add(a, b):
    """coefficient-wise sum of two Laurent polynomials"""
    terms = dict(a.items())
    for monomial, coefficient in b.items():
        terms[monomial] = terms.get(monomial, 0) + coefficient

    return LaurentPoly(terms)


def lp_neg(a):
    return LaurentPoly({monomial: -coefficient for monomial, coefficient in a.items()})


def lp_sub(a, b):
    return lp_add(a, lp_neg(b))


def lp_mul(a, b):
    """ring product of two Laurent polynomials"""
    terms = {}
    for monomial_a, coefficient_a in a.items():
        for monomial_b, coefficient_b in b.items():
            monomial = monomial_a * monomial_b
            terms[monomial] = terms.get(monomial, 0) + coefficient_a * coefficient_b

    return LaurentPoly(terms)


def lp_substitute(p, var, m):
    """replace every power ``var^k`` by ``m^k``

    Parameters
    ----------
    p : LaurentPoly
    var : str
        The variable to substitute.
    m : Monomial or mapping
        The monomial to substitute for ``var``.

    Returns
    -------
    LaurentPoly
    """
    if not isinstance(m, Monomial):
        m = Monomial(m)

    terms = {}
    for monomial, coefficient in p.items():
        power = monomial.get(var, 0)
        rest = Monomial({name: e for name, e in monomial.items() if name != var})
        new = rest * m**power
        terms[new] = terms.get(new, 0) + coefficient

    return LaurentPoly(terms)


def lp_is_symmetric(p, parity):
    """whether the coefficient of m⁻¹ is (−1)^parity times that of m

    Parameters
    ----------
    p : LaurentPoly
    parity : int
        Only the parity is used, so ε itself may be passed.
    """
    sign = -1 if parity % 2 else 1
    return all(
        p.coefficient(monomial.inverse()) == sign * coefficient
        for monomial, coefficient in p.items()
    )


def lp_evaluate(p, values):
    """evaluate at integer values of the variables

    Returns an ``int`` when the result is integral and a ``sympy.Rational``
    otherwise.
    """
    missing = set(p.variables) - set(values)
    if missing:
        raise ValueError(f"no values given for {sorted(missing)!r}")

    total = sympy.Integer(0)
    for monomial, coefficient in p.items():
        term = sympy.Integer(coefficient)
        for name, exponent in monomial.items():
            value = sympy.Integer(values[name])
            if value == 0 and exponent < 0:
                raise ZeroDivisionError(f"{name} = 0 in a negative power")

            term *= value**exponent
        total += term

    return int(total) if total.is_Integer else total
