"""Exact chamber and face counting for arrangements of hypersurfaces."""
