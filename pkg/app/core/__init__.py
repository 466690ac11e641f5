"""Core module - Configuración y utilidades centrales"""
