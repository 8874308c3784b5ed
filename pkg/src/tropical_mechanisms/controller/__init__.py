"""
controller
==========

This package connects the model to the command line and the view.

Features
--------

- `MechanismAnalyzer` aggregates model results into versioned JSON reports.
- `FigureRenderer` renders SVG figures and the HTML report from the
  Jinja2 templates in view/templates.
- JSON codecs for mechanisms, maximizers, polynomials, liftings and
  subdivisions, and report validation against the shipped schema.
"""
