"""Top-level package for pointproc, composable point processes.

Point processes are built from a unit, a bind and a handful of constructors,
sampled with splittable seeds, enumerated exactly when every ingredient is
discrete, and summarised by their intensity measures. Importing the package
has no side-effects.
"""

__all__ = [
    "__version__",
]

__version__: str = "0.1.0"
