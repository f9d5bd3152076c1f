"""Fourier coefficients of sgn(phi_alpha) by FFT quadrature vs closed forms.

The (1,1) coefficient is (2/pi) arcsin(a/2).  For (0,2) the column
"half" is sqrt(4 - a^2) / (2 pi) and "full" is sqrt(4 - a^2) / pi; the
numbers show which one the quadrature supports.
"""

import math

from hilbertpoints.poly import phi_alpha
from hilbertpoints.torus import TorusGrid, fourier_coeff, homogeneous_reduction, sgn_samples


def main(n=4096):
    grid = TorusGrid(2, n)
    print(f"{'alpha':>6} {'c11 num':>10} {'c11 cf':>10} {'c02 num':>10} {'half':>10} {'full':>10}")
    for a in (0.0, 0.5, 1.0, 1.5, 1.9, 2.0):
        s = sgn_samples(homogeneous_reduction(phi_alpha(a), grid))
        c11 = fourier_coeff(s, (1,)).real
        c02 = fourier_coeff(s, (0,)).real
        root = math.sqrt(4 - a * a)
        print(f"{a:6.2f} {c11:10.6f} {2 / math.pi * math.asin(a / 2):10.6f} {c02:10.6f} {root / (2 * math.pi):10.6f} {root / math.pi:10.6f}")


if __name__ == "__main__":
    main()
