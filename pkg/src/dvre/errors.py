"""Root of the exception hierarchy.

Every failure a caller is expected to handle derives from DvreError so the
CLI and HTTP layers can map errors to exit codes and status codes without
enumerating modules.  Modules define their concrete error types next to the
code that raises them.
"""


class DvreError(Exception):
    """Base class for all protocol-level failures."""
