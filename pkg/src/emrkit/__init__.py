"""emrkit: derive, generate, repair, execute, and grade executable metamorphic relations."""

__version__ = "0.1.0"
