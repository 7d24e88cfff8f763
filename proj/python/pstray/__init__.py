"""Parameterized pattern matching over a parameterized suffix tray.

Positions returned by ``Index.query`` are 1-based, as in the command line tool.
"""

from ._pstray import Error, Index, p_match, prev, spe

__all__ = ["Error", "Index", "p_match", "prev", "spe"]
