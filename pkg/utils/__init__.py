"""
Utils package for ckforms: Lie algebra core, reductive pairs, obstructions, integration and reporting
"""
__version__ = "0.1.0"
