# Grid Coloring Lab
# Rectangle-free grid colorings: SAT encodings, shift patterns, solving and classification

__version__ = '1.0.0'
__author__ = 'Grid Coloring Lab Team'
__app_name__ = 'Grid Coloring Lab'
