"""Análisis de matrices de datos sensible al centrado: centrados, modos de variación,
test de energía en la dirección constante y PLS de dos bloques."""
from .lib import *  # noqa: F401,F403
from .lib.datagen import ToySpec, TwoBlockSpec, gen_gaussian, gen_toy, gen_two_block, gen_two_trait  # noqa: F401
from .lib.io import MatrixFile, Transform, load_labels, load_matrix, save_matrix  # noqa: F401
from .lib.plots import PlotSpec, render_plot  # noqa: F401
