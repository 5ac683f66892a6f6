"""Match student programs to teacher specifications by trace embedding."""

__version__ = "0.1.0"
