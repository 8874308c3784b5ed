"""
Common utilities and base classes shared by the model packages.
"""
