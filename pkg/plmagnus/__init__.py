"""
plmagnus - exact post-Lie Magnus expansions and numeric Magnus integrators.
"""

# Single source of truth for version
__version__ = "0.1.0"
__author__ = "plmagnus Developers"
__email__ = "plmagnus-dev@users.noreply.github.com"
__url__ = "https://github.com/plmagnus/plmagnus"
