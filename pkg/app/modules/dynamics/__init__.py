"""Módulo de dinámica Lotka-Volterra"""
