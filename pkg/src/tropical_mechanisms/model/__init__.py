"""
model
=====

The mathematics: exact arithmetic, geometry, tropical polynomials and mechanisms.
"""
