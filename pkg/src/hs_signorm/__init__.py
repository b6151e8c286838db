"""hs-signorm - Hilbert-Schmidt signature norms by tensors, order statistics and bridges."""

__version__ = "0.1.0"
