"""
Unit conversions to natural units (Heaviside-Lorentz, hbar = c = 1, energies in eV)
"""
TESLA_TO_EV2 = 195.35  # 1 T expressed in eV^2
METER_TO_INV_EV = 5.0677e6  # 1 m expressed in eV^-1
HERTZ_TO_EV = 6.582119569e-16  # hbar in eV.s, multiplies an angular frequency in rad/s
GEV_TO_EV = 1e9

units_dict = {
    'tesla': {'factor': TESLA_TO_EV2, 'unit': 'eV^2', 'description': 'magnetic field strength'},
    'meter': {'factor': METER_TO_INV_EV, 'unit': 'eV^-1', 'description': 'length or interaction time'},
    'hertz': {'factor': HERTZ_TO_EV, 'unit': 'eV', 'description': 'photon energy hbar*omega, omega = 2*pi*f'},
    'GeV': {'factor': GEV_TO_EV, 'unit': 'eV', 'description': 'energy'},
}

"""
Physical defaults
"""
REDUCED_PLANCK_MASS_GEV = 2.435e18  # M_pl = 1/sqrt(8 pi G)
DEFAULT_CUTOFF_FREQUENCY_HZ = 1e9  # CMB bound on the primordial spectrum cutoff
QUOTED_BASELINE_PROBABILITY = 1e-20  # quoted order of magnitude for B = 10 T, L = 1e4 km
PERTURBATIVE_LIMIT = 0.3  # leading-order formulas trusted for lambda*t below this

"""
Truncated Fock space settings
"""
DEFAULT_DIMENSION_BUDGET = 100_000
BOGOLIUBOV_PADDING = 20  # working cutoff multiplier used when checking S^dag b S
CONVERGENCE_CHECK_MAX_DIM = 4096  # largest doubled oracle space re-evaluated by convert --oracle

"""
Numerical tolerances
"""
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
DENSITY_VALIDATION_TOL = 1e-8
EIGEN_FLOOR = 1e-10
ALIGNMENT_TOL = 1e-9

"""
Output formatting
"""
FLOAT_FORMAT = '%.11e'  # 12 significant digits
