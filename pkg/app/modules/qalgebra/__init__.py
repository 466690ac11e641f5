"""Módulo del grupo libro cuántico (álgebra no conmutativa)"""
