"""Exact GIT stability of length-n subschemes of the projective plane."""
