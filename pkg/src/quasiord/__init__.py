"""Exact polyhedral test for quasi-ordinary hypersurface singularities."""
