"""Reference values for the unit tests, computed symbolically or in high precision.

Run with: python3 tests/oracles/oracles.py
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40
x = sp.symbols("x")


def naive_hamiltonian(order, r_max, alpha, ell):
    """Coulomb (Z = 1) Hamiltonian from explicit Lagrange polynomials.

    The unsymmetrized collocation matrix M_ij = -g_j''(x_i) / (2 r'_i r'_j) + diagonal
    is conjugated with diag(P_N(x_j)) to give the symmetric form.
    """
    p = sp.legendre(order, x)
    interior = sorted(sp.Poly(sp.diff(p, x), x).nroots(n=50))
    nodes = [sp.Integer(-1)] + [sp.Float(v, 50) for v in interior] + [sp.Integer(1)]
    length = sp.Rational(alpha) * sp.Rational(r_max) / 2
    r_of = length * (1 + x) / (1 - x + alpha)
    dr = sp.diff(r_of, x)
    size = len(nodes)
    h = []
    for i in range(1, size - 1):
        row = []
        for j in range(1, size - 1):
            g = sp.Integer(1)
            for k in range(size):
                if k != j:
                    g *= (x - nodes[k]) / (nodes[j] - nodes[k])
            g2 = sp.diff(g, x, 2).subs(x, nodes[i])
            value = -g2 / (2 * dr.subs(x, nodes[i]) * dr.subs(x, nodes[j]))
            value *= p.subs(x, nodes[j]) / p.subs(x, nodes[i])
            if i == j:
                r = r_of.subs(x, nodes[i])
                value += sp.Rational(ell * (ell + 1), 2) / r**2 - 1 / r
            row.append(sp.N(value, 30))
        h.append(row)
    return h


def main():
    print("naive N=6 Coulomb l=1, r_max=10, alpha=1:")
    for row in naive_hamiltonian(6, 10, 1, 1):
        print("  {" + ", ".join(f"{float(v):.17e}L" for v in row) + "},")

    r = sp.symbols("r")
    cubic = (x + 1) + (x + 1) ** 3
    d1, d2, d3 = (sp.diff(cubic, x, k).subs(x, 0) for k in (1, 2, 3))
    print("cubic map v_m at x=0:", sp.nsimplify((3 * d2**2 - 2 * d3 * d1) / (8 * d1**4)))

    delta = mp.mpf("0.002")
    print("hulthen delta=0.002 r=1:", mp.nstr(-delta * mp.e ** (-delta) / (1 - mp.e ** (-delta)), 30))
    delta = mp.mpf("1e-7")
    print("hulthen delta=1e-7 r=3:", mp.nstr(-delta * mp.e ** (-3 * delta) / (1 - mp.e ** (-3 * delta)), 30))
    print("yukawa l=2 lambda=0.1 r=3:", mp.nstr(mp.mpf(3) / 9 - mp.e ** mp.mpf("-0.3") / 3, 30))
    print("coulomb 1s norm to r=5:", mp.nstr(1 - mp.e ** -10 * 61, 30))


if __name__ == "__main__":
    main()
