"""Modules package - Módulos de la aplicación"""
