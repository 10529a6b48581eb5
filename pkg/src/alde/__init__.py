"""alde: exact verification engine for Darboux-transformed Jacobi and
Appell-Lauricella polynomial families and their commuting operator algebras.

Everything is computed in exact rational arithmetic; identities are checked
as literal zero residuals, never numerically.
"""

__version__ = "0.1.0"

from .poly import MPoly, RatFn, Rat, rat, rat_str, pochhammer, ratfn

__all__ = ["MPoly", "RatFn", "Rat", "rat", "rat_str", "pochhammer", "ratfn",
           "__version__"]
