"""
splitsuper - Exact structure theory for split regular Hom-Lie superalgebras
"""

__version__ = "0.1.0"
