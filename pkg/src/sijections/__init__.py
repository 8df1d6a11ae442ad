"""Signed sets, sijections, and a computational bijection between monotone
triangles and shifted Gelfand-Tsetlin patterns."""
