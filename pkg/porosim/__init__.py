"""
porosim: parabolic obstacle problem simulator for membrane dimple formation
under travelling-wave Lorentz forcing, with free boundary regularity and
classification diagnostics.
"""

__version__ = "0.1.0a1"
