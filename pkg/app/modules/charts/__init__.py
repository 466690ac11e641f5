"""Módulo de cartas de coordenadas y estructuras con nombre"""
