"""Módulo de clasificación (clases A-I)"""
