"""Physical constants (CODATA 2018, SI units)."""

import math

c = 299_792_458.0                # speed of light in vacuum, m/s
eps0 = 8.854_187_8128e-12        # vacuum permittivity, F/m
mu0 = 1.256_637_062_12e-6        # vacuum permeability, N/A^2
hbar = 1.054_571_817e-34         # reduced Planck constant, J s
k_B = 1.380_649e-23              # Boltzmann constant, J/K (exact)
e_charge = 1.602_176_634e-19     # elementary charge, C (exact)
m_e = 9.109_383_7015e-31         # electron rest mass, kg

# electron rest energy, handy for eV-scale checks
m_e_c2 = m_e * c * c             # J
m_e_c2_eV = m_e_c2 / e_charge    # ~510998.95 eV

TWO_PI = 2.0 * math.pi
