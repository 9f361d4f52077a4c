"""sae-radial - self-adjoint extension of the attractive inverse-square potential"""

__version__ = "1.0.0"
