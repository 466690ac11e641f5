"""Hopf - Coproducto, counidad, antípoda y morfismo de Poisson"""
