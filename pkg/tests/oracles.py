"""Independent reference computations used by several test modules."""

import sympy

from neuralideal.code import all_words
from neuralideal.polyring import Polynomial, evaluate


def to_sympy(f: Polynomial, xs):
    expr = sympy.Integer(0)
    for t in f.terms:
        m = sympy.Integer(1)
        for x, e in zip(xs, t):
            m *= x**e
        expr += m
    return expr


def sympy_groebner(polys, n, order="grevlex"):
    """Reduced Groebner basis over GF(2) computed by sympy, as our Polynomials."""
    xs = sympy.symbols(f"x1:{n + 1}")
    exprs = [to_sympy(f, xs) for f in polys if f]
    if not exprs:
        return set()
    G = sympy.groebner(exprs, *xs, modulus=2, order=order)
    out = set()
    for g in G.polys:
        out.add(Polynomial(n, [m for m, c in g.terms() if int(c) % 2]))
    return {g for g in out if g}


def anf(truth, n):
    """Algebraic normal form of a Boolean function via the Moebius transform.

    ``truth`` maps each word of F_2^n (in ``all_words`` order) to 0/1.
    """
    words = all_words(n)
    coeff = {w.bits: truth(w) for w in words}
    for i in range(n):
        for w in words:
            if w.bits[i]:
                lower = w.bits[:i] + (0,) + w.bits[i + 1:]
                coeff[w.bits] ^= coeff[lower]
    return Polynomial(n, [b for b, c in coeff.items() if c])


def truth_table(f: Polynomial):
    return tuple(evaluate(f, w) for w in all_words(f.n))
