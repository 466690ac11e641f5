"""
BookLie - Estructuras Poisson-Lie del grupo libro
Verificación exacta, clasificación, cartas q-deformadas y dinámica Lotka-Volterra
"""

__version__ = "1.0.0"
