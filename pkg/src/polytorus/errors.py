"""Shared error types."""


class ResourceError(RuntimeError):
    """A requested computation exceeds a configured size cap.

    Raised instead of silently truncating work: callers asked for a net,
    grid, or enumeration bigger than the configured budget and must
    either shrink the request or raise the cap.
    """
