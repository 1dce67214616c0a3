"""Truncated power series in one or two variables.

A series carries an explicit truncation order N and keeps only terms of
total degree <= N.  Arithmetic truncates; composition requires the
substituted series to have zero constant term (otherwise truncation would
not commute with composition).  Binary operations return the minimum of the
two orders.
"""

from fractions import Fraction

from ..errors import SingularInversion, ValidationError
from .poly import Poly
from .rational import rat


class Series:
    __slots__ = ("variables", "order", "terms")

    def __init__(self, variables, order: int, terms):
        if len(variables) not in (1, 2):
            raise ValidationError("series support 1 or 2 variables")
        self.variables = tuple(variables)
        self.order = order
        self.terms = {e: rat(c) for e, c in terms.items() if c != 0 and sum(e) <= order}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables, order: int) -> "Series":
        return cls(variables, order, {})

    @classmethod
    def constant(cls, c, variables, order: int) -> "Series":
        return cls(variables, order, {(0,) * len(variables): rat(c)})

    @classmethod
    def variable(cls, name, variables, order: int) -> "Series":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, order, {tuple(e): Fraction(1)})

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Series":
        return cls(p.variables, order, dict(p.terms))

    def to_poly(self) -> Poly:
        return Poly(self.variables, dict(self.terms))

    # -- access ----------------------------------------------------------

    def coeff(self, *expo) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def truncate(self, order: int) -> "Series":
        return Series(self.variables, order, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Series) and self.variables == other.variables
                and self.order == other.order and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, self.order, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self.variables, self.order)
        if self.variables != other.variables:
            raise ValidationError("series over different variables")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Series(self.variables, order, terms)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.variables, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            return Series(self.variables, self.order,
                          {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Series(self.variables, order, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Series.constant(1, self.variables, self.order)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, name) -> "Series":
        """Derivative; the result is reliable one order lower."""
        i = self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return Series(self.variables, self.order - 1, terms)

    def inverse_unit(self) -> "Series":
        """Multiplicative inverse; needs a nonzero constant term."""
        c = self.constant_term()
        if c == 0:
            raise ZeroDivisionError("series has zero constant term")
        r = Series.constant(1, self.variables, self.order) - self * (1 / c)
        out = Series.constant(1, self.variables, self.order)
        power = Series.constant(1, self.variables, self.order)
        for _ in range(self.order):
            power = power * r
            if power.is_zero():
                break
            out = out + power
        return out * (1 / c)

    def compose(self, mapping: dict) -> "Series":
        """Substitute series for variables.

        ``mapping`` sends variable names to Series over a common target
        variable tuple; substituted series must have zero constant term.
        Unmapped variables must exist in the target tuple.
        """
        targets = [s for s in mapping.values()]
        if targets:
            tvars = targets[0].variables
            torder = min(self.order, min(s.order for s in targets))
        else:
            tvars = self.variables
            torder = self.order
        repl = {}
        for name in self.variables:
            if name in mapping:
                s = mapping[name]
                if s.variables != tvars:
                    raise ValidationError("substituted series over different variables")
                if s.constant_term() != 0:
                    raise ValidationError("substituted series must vanish at the origin")
                repl[name] = s.truncate(torder)
            else:
                repl[name] = Series.variable(name, tvars, torder)
        out = Series.zero(tvars, torder)
        # Horner-free direct expansion with cached powers per variable.
        powers = {name: [Series.constant(1, tvars, torder)] for name in self.variables}

        def power(name, k):
            cache = powers[name]
            while len(cache) <= k:
                cache.append(cache[-1] * repl[name])
            return cache[k]

        for e, c in sorted(self.terms.items(), key=lambda t: sum(t[0])):
            term = Series.constant(c, tvars, torder)
            for name, p in zip(self.variables, e):
                if p:
                    term = term * power(name, p)
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return str(self.to_poly()) + f" + O(deg {self.order + 1})"

    __repr__ = __str__


def series_invert(s: Series, center=(0, 0)) -> Series:
    """Compositional inverse in the first (designated) variable.

    ``s`` is the expansion around ``center`` of a map whose linear
    coefficient in the designated variable is invertible; remaining
    variables are carried as parameters.  The result ``u`` satisfies
    ``s.compose({x: u}) == x`` up to the truncation order.  The ``center``
    pair only documents the expansion point; series are always stored in
    centered local coordinates.
    """
    del center
    x = s.variables[0]
    n = len(s.variables)
    if s.constant_term() != 0:
        raise ValidationError("series to invert must have zero constant term")
    lin = s.coeff(*[1 if i == 0 else 0 for i in range(n)])
    if lin == 0:
        raise SingularInversion("designated variable has zero linear coefficient")
    order = s.order
    ds = s.diff(x).truncate(order)
    target = Series.variable(x, s.variables, order)
    u = (target - _pure_parameter_part(s)) * (1 / lin)
    for _ in range(order + 1):
        err = s.compose({x: u}) - target
        if err.is_zero():
            break
        deriv = ds.compose({x: u})
        u = u - err * deriv.inverse_unit()
    return u.truncate(order)


def _pure_parameter_part(s: Series) -> Series:
    """Terms of s free of the designated (first) variable."""
    keep = {e: c for e, c in s.terms.items() if e[0] == 0}
    return Series(s.variables, s.order, keep)
