"""Suite de verificación (comando verify)"""
