"""Flow-code calculus for gradient flows on spheres with holes."""
__version__ = "0.1.0"
