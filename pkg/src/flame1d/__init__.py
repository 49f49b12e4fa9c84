"""1D laminar premixed flames: classical reference solvers and
physics-informed neural networks for forward (fields + eigenvalues) and
inverse (reconstruction + parameter inference) problems."""

__version__ = "0.1.0"
