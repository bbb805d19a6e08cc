"""
Alon-Tarsi Certificate Toolkit
Certifying construction and verification of Alon-Tarsi orientations for plane graphs.
"""

__version__ = "1.0.0"
__author__ = "Alon-Tarsi Certificate Toolkit"
__description__ = "Certifying construction of AT <= 5 and matching AT <= 4 orientations for plane graphs"
