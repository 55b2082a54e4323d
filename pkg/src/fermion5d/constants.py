"""Physical constants used to express natural-unit results in electron volts.

Values follow CODATA 2018.  Both are overridable at the CLI for sensitivity
studies; the defaults are what the bundled hydrogen checks assume.
"""

#: Fine-structure constant (dimensionless).
FINE_STRUCTURE = 7.2973525693e-3

#: Electron rest energy m_e c^2 in electron volts.
ELECTRON_MASS_EV = 510998.95
