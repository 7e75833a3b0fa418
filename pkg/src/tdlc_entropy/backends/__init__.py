"""Concrete group families: finite tables, p-adic linear systems, shift
profiles, and products of any two."""
