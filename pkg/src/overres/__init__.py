"""Over-restricted representations of restricted Lie algebras in characteristic p."""
from overres.kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
