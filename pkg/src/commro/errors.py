"""Shared exception types and size-guard defaults."""

from __future__ import annotations

# Dense matrices and symbolic expansions can grow exponentially (Nisan
# matrices are (d+1)^|S| wide); operations that materialize them refuse
# to exceed these caps instead of thrashing.
DEFAULT_ENTRY_CAP = 1 << 20
DEFAULT_TERM_CAP = 1 << 20


class CapExceeded(RuntimeError):
    """A size guard tripped; `flag` names the CLI option that raises it."""

    def __init__(self, message: str, flag: str = "--max-entries"):
        super().__init__(message)
        self.flag = flag
