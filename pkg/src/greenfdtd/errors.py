"""Exception types shared across the package."""


class DegeneratePoleError(ValueError):
    """Critically damped oscillator (delta_p == omega_p): the two complex
    roots coalesce and the simple-pole residue formula does not apply."""


class ResonanceError(ZeroDivisionError):
    """Undamped pole evaluated exactly at its resonance frequency."""


class RealnessError(ArithmeticError):
    """A quantity that must be real carried an imaginary residual above
    tolerance; indicates corrupted coefficients or state."""


class ConfigError(ValueError):
    """Config file could not be parsed; message carries the line number."""


class ValidationError(ValueError):
    """A parsed config violates an invariant; message names it."""


class SeriesMismatchError(ValueError):
    """Two probe series that must share node, dt and length do not."""


class EmptyBandError(ValueError):
    """Band threshold excluded every frequency bin."""
