"""Exact core - Racionales y polinomios de Laurent dispersos"""
