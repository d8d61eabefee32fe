"""Derived structures on a twisted graded algebra: the graded commutator,
the twisted associator and Jacobian, the induced binary-ternary algebras of
commutator/associator type and of Lie-Yamaguti type carried by a left
Leibniz product, admissibility and equivalence checks, the left/right
conversion, and a twist generator used to produce test fixtures.

Constructions are pure: they return fresh immutable objects.  Preconditions
are enforced (a refused input raises PreconditionError); the classical
theorems backing each construction are re-verified as postconditions, so a
sign error here cannot survive unnoticed.
"""

from fractions import Fraction

from . import identities as idn
from .kernel import (
    BilinearOp,
    BinaryTernaryAlgebra,
    HomSuperalgebra,
    TernaryOp,
    check_algebra_grading,
    check_multiplicativity,
)
from .report import Report

HALF = Fraction(1, 2)


class PreconditionError(ValueError):
    pass


def _require_grading(algebra):
    report = check_algebra_grading(algebra)
    if not report.passed:
        raise PreconditionError("structure constants break the parity rule: "
                                + report.summary())


def _require_multiplicative(algebra):
    if algebra.multiplicative is None:
        check_multiplicativity(algebra)
    if not algebra.multiplicative:
        raise PreconditionError("twisting map is not an endomorphism")


def _require_leibniz(algebra):
    _require_grading(algebra)
    _require_multiplicative(algebra)
    report = idn.check_identity(idn.REGISTRY["LLSI"], algebra, name="LLSI",
                                first_only=True)
    if not report.passed:
        raise PreconditionError("product is not left Leibniz: "
                                + report.summary())


def supercommutator(algebra):
    """Structure constants of [x,y] = x*y - (-1)^{|x||y|} y*x."""
    _require_grading(algebra)
    return algebra.product.graded_commutator()


def hom_associator(algebra):
    """Twisted associator (x*y)*a(z) - a(x)*(y*z) as a ternary tensor."""
    _require_grading(algebra)
    sp = algebra.space
    star = algebra.product
    alpha = algebra.alpha
    n = sp.dim
    table = []
    for i in range(n):
        cube = []
        for j in range(n):
            plane = []
            xy = star.on_basis(i, j)
            ax = alpha.on_basis(i)
            for k in range(n):
                value = (star(xy, alpha.on_basis(k))
                         - star(ax, star.on_basis(j, k)))
                plane.append(value.coords)
            cube.append(plane)
        table.append(cube)
    return TernaryOp(sp, table)


def hom_super_jacobian(algebra):
    """Signed cyclic sum (x*y)*a(z) + (-1)^{|x|(|y|+|z|)}(y*z)*a(x)
    + (-1)^{|z|(|x|+|y|)}(z*x)*a(y) as a ternary tensor."""
    _require_grading(algebra)
    sp = algebra.space
    star = algebra.product
    alpha = algebra.alpha
    n = sp.dim

    def shifted(i, j, k):
        return star(star.on_basis(i, j), alpha.on_basis(k))

    table = []
    for i in range(n):
        cube = []
        pi = sp.parity(i)
        for j in range(n):
            plane = []
            pj = sp.parity(j)
            for k in range(n):
                pk = sp.parity(k)
                value = shifted(i, j, k)
                term = shifted(j, k, i)
                if pi and (pj + pk) % 2:
                    term = -term
                value = value + term
                term = shifted(k, i, j)
                if pk and (pi + pj) % 2:
                    term = -term
                value = value + term
                plane.append(value.coords)
            cube.append(plane)
        table.append(cube)
    return TernaryOp(sp, table)


def build_hom_akivis(algebra, verify=True):
    """The commutator/associator binary-ternary algebra of a multiplicative
    input.  The result always satisfies the AKIVIS suite; this is re-checked
    unless verify=False."""
    _require_grading(algebra)
    _require_multiplicative(algebra)
    derived = BinaryTernaryAlgebra(
        algebra.space,
        supercommutator(algebra),
        hom_associator(algebra),
        algebra.alpha,
        name="akivis(%s)" % (algebra.name or "?"))
    if verify:
        reports = idn.check_suite("akivis", derived)
        if not all(r.passed for r in reports):
            raise RuntimeError("commutator/associator structure failed its "
                               "own law: " + "; ".join(
                                   r.summary() for r in reports if not r.passed))
    return derived


def build_hom_ly(algebra, verify=True):
    """The binary-ternary algebra carried by a left Leibniz product:
    binary [x,y] = x*y - (-1)^{|x||y|} y*x, ternary {x,y,z} = -(x*y)*a(z).
    The eight SHLY axioms are re-verified as a postcondition."""
    _require_leibniz(algebra)
    sp = algebra.space
    star = algebra.product
    alpha = algebra.alpha
    n = sp.dim
    table = []
    for i in range(n):
        cube = []
        for j in range(n):
            plane = []
            xy = star.on_basis(i, j)
            for k in range(n):
                value = -star(xy, alpha.on_basis(k))
                plane.append(value.coords)
            cube.append(plane)
        table.append(cube)
    derived = BinaryTernaryAlgebra(
        sp, supercommutator(algebra), TernaryOp(sp, table), alpha,
        name="ly(%s)" % (algebra.name or "?"))
    if verify:
        reports = idn.check_suite("ly", derived)
        if not all(r.passed for r in reports):
            raise RuntimeError("derived Lie-Yamaguti structure failed an "
                               "axiom: " + "; ".join(
                                   r.summary() for r in reports if not r.passed))
    return derived


def check_lie_admissible(algebra):
    """Whether the signed cyclic product sum vanishes, i.e. whether the
    graded commutator of a left Leibniz product is a twisted Lie bracket.
    When the verdict is a pass, the commutator algebra is re-checked against
    the full "lie" suite."""
    _require_leibniz(algebra)
    report = idn.check_identity(idn.REGISTRY["LIE_ADMISSIBLE"], algebra,
                                name="LIE_ADMISSIBLE")
    if report.passed:
        bracket_algebra = HomSuperalgebra(
            algebra.space, supercommutator(algebra), algebra.alpha,
            name="commutator(%s)" % (algebra.name or "?"))
        cross = idn.check_suite("lie", bracket_algebra)
        if not all(r.passed for r in cross):
            raise RuntimeError("admissible verdict disagrees with the "
                               "bracket laws: " + "; ".join(
                                   r.summary() for r in cross if not r.passed))
    return report


def left_to_right(algebra):
    """The opposite algebra x.y = y*x (transposed structure constants).
    Applying it twice gives back an equal algebra."""
    return HomSuperalgebra(algebra.space, algebra.product.transpose(),
                           algebra.alpha, ternary=algebra.ternary,
                           name="opposite(%s)" % (algebra.name or "?"))


def check_ternary_equivalence(algebra):
    """Three-way equality of the Lie-Yamaguti ternary operation on a left
    Leibniz product, on every basis triple:

        (-1)^{|x||y|} as(y,x,z) - as(x,y,z)  =  -(x*y)*a(z)
                                             =  -1/2 [x,y]*a(z)

    The Koszul factor on the transposed associator is forced by the graded
    setting; without it the first expression differs on odd-odd sectors.
    """
    _require_leibniz(algebra)
    sp = algebra.space
    star = algebra.product
    alpha = algebra.alpha
    bracket = supercommutator(algebra)
    associator = hom_associator(algebra)
    n = sp.dim
    bad = []
    checked = 0
    for i in range(n):
        for j in range(n):
            sign = -1 if sp.parity(i) and sp.parity(j) else 1
            for k in range(n):
                checked += 1
                swapped = associator.on_basis(j, i, k)
                if sign < 0:
                    swapped = -swapped
                first = swapped - associator.on_basis(i, j, k)
                second = -star(star.on_basis(i, j), alpha.on_basis(k))
                third = -star(bracket.on_basis(i, j),
                              alpha.on_basis(k)).scale(HALF)
                if not (first == second and second == third):
                    bad.append({"tuple": [sp.labels[i], sp.labels[j],
                                          sp.labels[k]],
                                "residual": dict((first - second).nonzero_items()),
                                "residual_half": dict(
                                    (second - third).nonzero_items())})
    return Report("ternary_equivalence", not bad, checked, bad)


def yau_twist(algebra, beta):
    """Twist an untwisted left Leibniz product by an endomorphism:
    x *' y = beta(x*y) with twisting map beta.  The output is verified to be
    multiplicative and left Leibniz before it is returned."""
    if not algebra.alpha.is_identity():
        raise PreconditionError("twist source must have the identity map")
    _require_leibniz(algebra)
    if beta.space != algebra.space:
        raise PreconditionError("endomorphism over a different space")
    endo_probe = HomSuperalgebra(algebra.space, algebra.product, beta)
    if not check_multiplicativity(endo_probe).passed:
        raise PreconditionError("beta is not an algebra endomorphism")
    sp = algebra.space
    n = sp.dim
    table = []
    for i in range(n):
        plane = []
        for j in range(n):
            plane.append(beta(algebra.product.on_basis(i, j)).coords)
        table.append(plane)
    twisted = HomSuperalgebra(sp, BilinearOp(sp, table), beta,
                              name="twist(%s)" % (algebra.name or "?"))
    reports = idn.check_suite("leibniz", twisted)
    if not all(r.passed for r in reports):
        raise RuntimeError("twisted product lost the Leibniz law: "
                           + "; ".join(r.summary() for r in reports
                                       if not r.passed))
    return twisted
