"""Catalog of quartic forms that are never perfect squares.

Each entry pairs an exact evaluator with an exception predicate naming
exactly the degenerate parameter assignments at which the value *is* a
square (zero values, axis points whose surviving coefficient is a perfect
square, and the few collapsed diagonals). Scanners enforce the central
claim: every square the scan finds lies inside the exception set.

Two shapes cover the whole catalog:

  quartic   C1*x^4 + C22*x^2*y^2 + C3*y^4   (coefficients may depend on
            family parameters such as m, n, alpha, beta)
  product   C*x*y*(x^2 + s*y^2)

For the quartic shape the exception predicate is uniform: the value is 0,
or a variable is 0 / the variables are equal and the collapsed coefficient
is a perfect square. One form (F16e) additionally degenerates along
|alpha|*x^2 = |beta|*y^2 whenever alpha*beta is a perfect square; there the
value equals (2*g*|alpha|*x^2)^2 with g^2 = alpha*beta. Family parameter
domains follow each family's hypothesis (m squarefree for F15a-F15d, n
squarefree for F17); the recorded exception sets were fixed by exhaustive
desk-scale scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .arith import is_square
from .errors import ArityMismatchError, UnsupportedExponentError

__all__ = [
    "Form",
    "FormInstance",
    "CATALOG",
    "FAMILIES",
    "evaluate",
    "derive_families",
    "get_form",
    "expand_selector",
    "resolve_form_key",
    "manifest",
    "squarefree_values",
]

QUARTIC = "quartic"
PRODUCT = "product"

# Aux-parameter domain kinds.
DOMAIN_NONNEG = "nonneg"  # 0..family_bound
DOMAIN_SQUAREFREE = "squarefree"  # squarefree values in 1..family_bound
DOMAIN_SIGNED = "signed_nonzero"  # -family_bound..-1, 1..family_bound


def squarefree_values(bound: int) -> list[int]:
    """Squarefree integers in 1..bound."""
    out = []
    for m in range(1, bound + 1):
        d = 2
        ok = True
        while d * d <= m:
            if m % (d * d) == 0:
                ok = False
                break
            d += 1
        if ok:
            out.append(m)
    return out


@dataclass(frozen=True)
class FormInstance:
    """One evaluation of a catalog form at a concrete parameter assignment."""

    form: str
    params: dict[str, int]
    value: int
    is_square: bool
    is_exception: bool


@dataclass(frozen=True)
class Form:
    """A form with exact evaluator and exception predicate.

    ``coeffs`` maps the aux-parameter values to the concrete coefficient
    tuple: (C1, C22, C3) for the quartic shape, (C, s) for the product
    shape. ``naive`` is a deliberately schoolbook evaluator over the full
    parameter list, kept independent of ``coeffs`` so scans can be
    cross-checked through a second route.
    """

    form_id: str
    family: str
    expression: str
    var_names: tuple[str, str]
    aux_names: tuple[str, ...]
    aux_domain: str
    kind: str
    coeffs: Callable[..., tuple]
    naive: Callable[..., int]
    exception_desc: str
    aliases: tuple[str, ...] = ()
    signed: frozenset = frozenset()
    # Extra exception clause (F16e's proportional line); receives
    # (aux values..., x, y) and must imply the value is a square.
    extra_exception: Callable[..., bool] | None = None
    # Key understood by resolve_form_key; catalog ids resolve to themselves,
    # derived families carry their construction recipe.
    key: object = None

    @property
    def param_names(self) -> tuple[str, ...]:
        return self.aux_names + self.var_names

    def value_at(self, aux: tuple[int, ...], x: int, y: int) -> int:
        if self.kind == QUARTIC:
            c1, c22, c3 = self.coeffs(*aux)
            return c1 * x**4 + c22 * x * x * y * y + c3 * y**4
        c, s = self.coeffs(*aux)
        return c * x * y * (x * x + s * y * y)

    def exception_at(self, aux: tuple[int, ...], x: int, y: int, value: int) -> bool:
        if value == 0:
            return True
        if self.kind == PRODUCT:
            # On x = y the product collapses to C*(1 + s)*x^4.
            c, s = self.coeffs(*aux)
            return x == y and is_square(c * (1 + s))
        c1, c22, c3 = self.coeffs(*aux)
        if y == 0 and is_square(c1):
            return True
        if x == 0 and is_square(c3):
            return True
        if x == y and is_square(c1 + c22 + c3):
            return True
        if self.extra_exception is not None and self.extra_exception(*aux, x, y):
            return True
        return False

    def naive_value(self, aux: tuple[int, ...], x: int, y: int) -> int:
        return self.naive(*aux, x, y)


def _no_aux() -> tuple:
    raise AssertionError("form has no aux parameters")


def _fixed(*coeffs: int) -> Callable[..., tuple]:
    def fn() -> tuple:
        return coeffs

    return fn


def _f16e_proportional(alpha: int, beta: int, x: int, y: int) -> bool:
    return is_square(alpha * beta) and abs(alpha) * x * x == abs(beta) * y * y


_CATALOG_SPECS: list[Form] = []


def _register(form: Form) -> None:
    _CATALOG_SPECS.append(form)


# The first ten entries follow the classical summary table; its roman
# numbering repeats VII, so positional ids F1..F10 are authoritative and
# the roman labels are kept as aliases only.
_register(Form(
    "F1", "F1", "a^4 + b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, 0, 1), lambda a, b: a**4 + b**4,
    "a*b = 0", aliases=("I",),
))
_register(Form(
    "F2", "F2", "a^4 - 4*b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, 0, -4), lambda a, b: a**4 - 4 * b**4,
    "b = 0", aliases=("II",),
))
_register(Form(
    "F3", "F3", "4*a^4 - b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(4, 0, -1), lambda a, b: 4 * a**4 - b**4,
    "b = 0", aliases=("III",),
))
_register(Form(
    "F4", "F4", "a*b*(a^2 + b^2)", ("a", "b"), (), "", PRODUCT,
    _fixed(1, 1), lambda a, b: a * b * (a * a + b * b),
    "a*b = 0 (value 0)", aliases=("IV",),
))
_register(Form(
    "F5", "F5", "2*a*b*(a^2 - b^2)", ("a", "b"), (), "", PRODUCT,
    _fixed(2, -1), lambda a, b: 2 * a * b * (a * a - b * b),
    "a*b = 0 or a = b (value 0)", aliases=("V",),
))
_register(Form(
    "F6", "F6", "a^4 - b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, 0, -1), lambda a, b: a**4 - b**4,
    "b = 0 or a = b", aliases=("VI",),
))
# 4*a^4 is (2*a^2)^2, so b = 0 degenerates as well as a = 0.
_register(Form(
    "F7", "F7", "4*a^4 + b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(4, 0, 1), lambda a, b: 4 * a**4 + b**4,
    "a = 0 or b = 0", aliases=("VII",),
))
_register(Form(
    "F8", "F8", "a*b*(a^2 - b^2)", ("a", "b"), (), "", PRODUCT,
    _fixed(1, -1), lambda a, b: a * b * (a * a - b * b),
    "a*b = 0 or a = b (value 0)", aliases=("VII (bis)",),
))
# On a = b this is 4*a^4 = (2*a^2)^2, so the diagonal joins the zeros.
_register(Form(
    "F9", "F9", "2*a*b*(a^2 + b^2)", ("a", "b"), (), "", PRODUCT,
    _fixed(2, 1), lambda a, b: 2 * a * b * (a * a + b * b),
    "a*b = 0 (value 0) or a = b", aliases=("IX",),
))
_register(Form(
    "F10+", "F10", "2*a^4 + 2*b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(2, 0, 2), lambda a, b: 2 * a**4 + 2 * b**4,
    "a = b", aliases=("X",),
))
_register(Form(
    "F10-", "F10", "2*a^4 - 2*b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(2, 0, -2), lambda a, b: 2 * a**4 - 2 * b**4,
    "a = b (value 0)", aliases=("X",),
))
_register(Form(
    "F11", "F11", "a^4 + 2*b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, 0, 2), lambda a, b: a**4 + 2 * b**4,
    "b = 0",
))
_register(Form(
    "F12", "F12", "a^4 - 6*a^2*b^2 + b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, -6, 1), lambda a, b: a**4 - 6 * a * a * b * b + b**4,
    "a*b = 0",
))
_register(Form(
    "F13", "F13", "a^4 + 6*a^2*b^2 + b^4", ("a", "b"), (), "", QUARTIC,
    _fixed(1, 6, 1), lambda a, b: a**4 + 6 * a * a * b * b + b**4,
    "a*b = 0",
))
_register(Form(
    "F14a", "F14", "8*y^4 - x^4", ("x", "y"), (), "", QUARTIC,
    _fixed(-1, 0, 8), lambda x, y: 8 * y**4 - x**4,
    "x = y = 0 (value 0)",
))
# 4*y^4 is a square for every y, so the whole x = 0 axis degenerates.
_register(Form(
    "F14b", "F14", "4*y^4 - 2*x^4", ("x", "y"), (), "", QUARTIC,
    _fixed(-2, 0, 4), lambda x, y: 4 * y**4 - 2 * x**4,
    "x = 0",
))
_register(Form(
    "F14c", "F14", "2*y^4 - 4*x^4", ("x", "y"), (), "", QUARTIC,
    _fixed(-4, 0, 2), lambda x, y: 2 * y**4 - 4 * x**4,
    "x = y = 0 (value 0)",
))

# F15: families in a squarefree multiplier m. A square factor in m would
# be absorbed into the variables and smuggle in the reduced form's
# degenerate lines (e.g. m = 4 turns 2*m*a^4 + 2*m^3*b^4 into
# 8*(a^4 + (2*b)^4), square along a = 2*b), so the domain matches the
# family hypothesis. m = 1 reduces to F1/F6/F10 whose exceptions the
# axis/diagonal rule already covers.
_F15_DESC = "value 0; axis/diagonal points whose collapsed coefficient is a perfect square"
_register(Form(
    "F15a", "F15", "m*a^4 + m^3*b^4", ("a", "b"), ("m",), DOMAIN_SQUAREFREE, QUARTIC,
    lambda m: (m, 0, m**3), lambda m, a, b: m * a**4 + m**3 * b**4,
    _F15_DESC,
))
_register(Form(
    "F15b", "F15", "m*a^4 - m^3*b^4", ("a", "b"), ("m",), DOMAIN_SQUAREFREE, QUARTIC,
    lambda m: (m, 0, -(m**3)), lambda m, a, b: m * a**4 - m**3 * b**4,
    _F15_DESC,
))
_register(Form(
    "F15c", "F15", "2*m*a^4 + 2*m^3*b^4", ("a", "b"), ("m",), DOMAIN_SQUAREFREE, QUARTIC,
    lambda m: (2 * m, 0, 2 * m**3), lambda m, a, b: 2 * m * a**4 + 2 * m**3 * b**4,
    _F15_DESC,
))
_register(Form(
    "F15d", "F15", "2*m*a^4 - 2*m^3*b^4", ("a", "b"), ("m",), DOMAIN_SQUAREFREE, QUARTIC,
    lambda m: (2 * m, 0, -2 * m**3), lambda m, a, b: 2 * m * a**4 - 2 * m**3 * b**4,
    _F15_DESC,
))
# The two-multiplier difference shapes hold for arbitrary m, n >= 0: the
# only squares are zeros and the b = 0 axis when the multiplier m*n (resp.
# 2*m*n) is itself a perfect square.
_register(Form(
    "F15e", "F15", "m*n*(m^2*a^4 - n^2*b^4)", ("a", "b"), ("m", "n"), DOMAIN_NONNEG, QUARTIC,
    lambda m, n: (m**3 * n, 0, -(m * n**3)),
    lambda m, n, a, b: m * n * (m * m * a**4 - n * n * b**4),
    "value 0; b = 0 with m*n a perfect square",
))
_register(Form(
    "F15f", "F15", "2*m*n*(m^2*a^4 - n^2*b^4)", ("a", "b"), ("m", "n"), DOMAIN_NONNEG, QUARTIC,
    lambda m, n: (2 * m**3 * n, 0, -2 * m * n**3),
    lambda m, n, a, b: 2 * m * n * (m * m * a**4 - n * n * b**4),
    "value 0; b = 0 with 2*m*n a perfect square",
))

# F16: the six general two-coefficient families, alpha and beta signed.
_F16_DESC = "value 0; axis/diagonal points whose collapsed coefficient is a perfect square"
_register(Form(
    "F16a", "F16", "alpha^3*beta*x^4 + alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (alpha**3 * beta, 0, alpha * beta**3),
    lambda alpha, beta, x, y: alpha**3 * beta * x**4 + alpha * beta**3 * y**4,
    _F16_DESC, signed=frozenset({"alpha", "beta"}),
))
_register(Form(
    "F16b", "F16", "alpha^3*beta*x^4 - alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (alpha**3 * beta, 0, -(alpha * beta**3)),
    lambda alpha, beta, x, y: alpha**3 * beta * x**4 - alpha * beta**3 * y**4,
    _F16_DESC, signed=frozenset({"alpha", "beta"}),
))
_register(Form(
    "F16c", "F16", "alpha^3*beta*x^4 + 2*alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (alpha**3 * beta, 0, 2 * alpha * beta**3),
    lambda alpha, beta, x, y: alpha**3 * beta * x**4 + 2 * alpha * beta**3 * y**4,
    _F16_DESC, signed=frozenset({"alpha", "beta"}),
))
_register(Form(
    "F16d", "F16", "2*alpha^3*beta*x^4 - 2*alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (2 * alpha**3 * beta, 0, -2 * alpha * beta**3),
    lambda alpha, beta, x, y: 2 * alpha**3 * beta * x**4 - 2 * alpha * beta**3 * y**4,
    _F16_DESC, signed=frozenset({"alpha", "beta"}),
))
# With alpha*beta = g^2 this is 2*g^2*((alpha*x^2)^2 + (beta*y^2)^2), a
# square exactly on |alpha|*x^2 = |beta|*y^2; hence the extra clause.
_register(Form(
    "F16e", "F16", "2*alpha^3*beta*x^4 + 2*alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (2 * alpha**3 * beta, 0, 2 * alpha * beta**3),
    lambda alpha, beta, x, y: 2 * alpha**3 * beta * x**4 + 2 * alpha * beta**3 * y**4,
    _F16_DESC + "; |alpha|*x^2 = |beta|*y^2 with alpha*beta a perfect square",
    signed=frozenset({"alpha", "beta"}), extra_exception=_f16e_proportional,
))
_register(Form(
    "F16f", "F16", "2*alpha^3*beta*x^4 - 4*alpha*beta^3*y^4",
    ("x", "y"), ("alpha", "beta"), DOMAIN_SIGNED, QUARTIC,
    lambda alpha, beta: (2 * alpha**3 * beta, 0, -4 * alpha * beta**3),
    lambda alpha, beta, x, y: 2 * alpha**3 * beta * x**4 - 4 * alpha * beta**3 * y**4,
    _F16_DESC, signed=frozenset({"alpha", "beta"}),
))

# F17: trinomial families in a squarefree multiplier n (a square factor in
# n reduces to F12/F13 along hidden lines, e.g. n = 4 collapses on p = 2*q).
_F17_DESC = "value 0; axis/diagonal points whose collapsed coefficient is a perfect square"
_register(Form(
    "F17a", "F17", "n*(p^4 + 6*n*p^2*q^2 + n^2*q^4)", ("p", "q"), ("n",),
    DOMAIN_SQUAREFREE, QUARTIC,
    lambda n: (n, 6 * n * n, n**3),
    lambda n, p, q: n * (p**4 + 6 * n * p * p * q * q + n * n * q**4),
    _F17_DESC,
))
_register(Form(
    "F17b", "F17", "n*(p^4 - 6*n*p^2*q^2 + n^2*q^4)", ("p", "q"), ("n",),
    DOMAIN_SQUAREFREE, QUARTIC,
    lambda n: (n, -6 * n * n, n**3),
    lambda n, p, q: n * (p**4 - 6 * n * p * p * q * q + n * n * q**4),
    _F17_DESC,
))
_register(Form(
    "F17c", "F17", "2*n*(p^4 + 6*n*p^2*q^2 + n^2*q^4)", ("p", "q"), ("n",),
    DOMAIN_SQUAREFREE, QUARTIC,
    lambda n: (2 * n, 12 * n * n, 2 * n**3),
    lambda n, p, q: 2 * n * (p**4 + 6 * n * p * p * q * q + n * n * q**4),
    _F17_DESC,
))
_register(Form(
    "F17d", "F17", "2*n*(p^4 - 6*n*p^2*q^2 + n^2*q^4)", ("p", "q"), ("n",),
    DOMAIN_SQUAREFREE, QUARTIC,
    lambda n: (2 * n, -12 * n * n, 2 * n**3),
    lambda n, p, q: 2 * n * (p**4 - 6 * n * p * p * q * q + n * n * q**4),
    _F17_DESC,
))

CATALOG: dict[str, Form] = {f.form_id: f for f in _CATALOG_SPECS}

FAMILIES: dict[str, list[str]] = {}
for _f in _CATALOG_SPECS:
    FAMILIES.setdefault(_f.family, []).append(_f.form_id)


def get_form(form_id: str) -> Form:
    try:
        return CATALOG[form_id]
    except KeyError:
        raise KeyError(f"unknown form id {form_id!r}") from None


def expand_selector(selector: str) -> list[Form]:
    """Resolve a form id or family id to the list of concrete forms."""
    if selector in CATALOG:
        return [CATALOG[selector]]
    if selector in FAMILIES:
        return [CATALOG[i] for i in FAMILIES[selector]]
    raise KeyError(f"unknown form or family id {selector!r}")


def evaluate(form: Form | str, params: Mapping[str, int]) -> FormInstance:
    """Evaluate a form at a parameter assignment, flagging squares/exceptions."""
    f = get_form(form) if isinstance(form, str) else form
    expected = f.param_names
    if set(params) != set(expected):
        raise ArityMismatchError(
            f"{f.form_id} takes parameters {expected}, got {tuple(sorted(params))}"
        )
    for name, v in params.items():
        if v < 0 and name not in f.signed:
            raise ArityMismatchError(f"{f.form_id} parameter {name} must be >= 0")
    aux = tuple(params[n] for n in f.aux_names)
    x, y = params[f.var_names[0]], params[f.var_names[1]]
    value = f.value_at(aux, x, y)
    return FormInstance(
        form=f.form_id,
        params=dict(params),
        value=value,
        is_square=is_square(value),
        is_exception=f.exception_at(aux, x, y, value),
    )


def _coeff_str(c: int, var: str) -> str:
    if c == 0:
        return ""
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    term = f"{var}^4" if mag == 1 else f"{mag}*{var}^4"
    return f" {sign} {term}"


def _binomial_expr(c1: int, c3: int, xv: str, yv: str) -> str:
    s = (_coeff_str(c1, xv) + _coeff_str(c3, yv)).strip()
    if s.startswith("+ "):
        s = s[2:]
    elif s.startswith("- "):
        s = "-" + s[2:]
    return s


# Derived-family shapes: (C1, C3) coefficient makers. Only shapes actually
# backed by the base non-square forms x^4 + k*y^4 (k in {1, 2}) and their
# corollary chain are emitted; bolder k-foldings assert false claims
# (x^4 - 2*y^4 = 49 at (3, 2); 2*x^4 + 32*y^4 = 64 at (2, 1)). The last
# shape is the scalar corollary form, constant in alpha and beta.
_DERIVED_SHAPES: list[Callable[[int, int, int], tuple[int, int]]] = [
    lambda k, A, B: (A**3 * B, k * A * B**3),
    lambda k, A, B: (-2 * A**3 * B, 2 * k * A * B**3),
    lambda k, A, B: (2 * A**3 * B, -2 * k * A * B**3),
    lambda k, A, B: (A**3 * B, -4 * k * A * B**3),
    lambda k, A, B: (2 * A**3 * B, 8 * k * A * B**3),
    lambda k, A, B: (1, -4 * k),
]

SUPPORTED_EXPONENTS = (1, 2)


def derive_families(k: int, alpha: int, beta: int) -> list[Form]:
    """Instantiate the six derived two-coefficient families for (k, alpha, beta).

    k selects the verified base form x^4 + k*y^4 (k = 1 or 2); alpha and
    beta may be negative but not zero. The returned forms scan over
    non-negative x, y like any catalog form.
    """
    if k not in SUPPORTED_EXPONENTS:
        raise UnsupportedExponentError(f"no verified base form for k = {k}")
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    out = []
    for idx, shape in enumerate(_DERIVED_SHAPES):
        c1, c3 = shape(k, alpha, beta)
        out.append(Form(
            form_id=f"F16[k={k},alpha={alpha},beta={beta}]/{idx + 1}",
            family="F16-derived",
            expression=_binomial_expr(c1, c3, "x", "y"),
            var_names=("x", "y"),
            aux_names=(),
            aux_domain="",
            kind=QUARTIC,
            coeffs=_fixed(c1, 0, c3),
            naive=(lambda c1=c1, c3=c3: (lambda x, y: c1 * x**4 + c3 * y**4))(),
            exception_desc=_F16_DESC,
            key=("derived", k, alpha, beta, idx),
        ))
    return out


def resolve_form_key(key: object) -> Form:
    """Rebuild a Form from its pickle-safe key (used by scan workers)."""
    if isinstance(key, Form):
        return key
    if isinstance(key, str):
        return get_form(key)
    if isinstance(key, tuple) and key and key[0] == "derived":
        _, k, alpha, beta, idx = key
        return derive_families(k, alpha, beta)[idx]
    raise KeyError(f"unresolvable form key {key!r}")


def form_key(form: Form) -> object:
    """Pickle-safe handle for a form; ad-hoc forms pass through as-is and
    can only be scanned inline (workers = 1)."""
    if form.key is not None:
        return form.key
    if form.form_id in CATALOG:
        return form.form_id
    return form


def manifest() -> list[dict]:
    """JSON-ready description of every catalog form."""
    out = []
    for f in CATALOG.values():
        out.append({
            "form": f.form_id,
            "family": f.family,
            "expression": f.expression,
            "variables": list(f.var_names),
            "family_params": list(f.aux_names),
            "family_param_domain": f.aux_domain,
            "arity": len(f.param_names),
            "exceptions": f.exception_desc,
            "aliases": list(f.aliases),
        })
    return out
