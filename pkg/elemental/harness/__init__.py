"""Seeded Monte Carlo experiments over the elemental estimators."""
