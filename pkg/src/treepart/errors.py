"""Exception types shared across the package."""


class TreePartError(Exception):
    """Base class for all errors raised by treepart."""


class InputError(TreePartError, ValueError):
    """Malformed or out-of-contract user input (exit status 2 in the CLI)."""


class CapacityError(TreePartError):
    """An exact oracle was asked to handle an instance beyond its cap."""


class ContractError(TreePartError, AssertionError):
    """An internal recursion invariant failed; indicates a bug, not bad input."""
