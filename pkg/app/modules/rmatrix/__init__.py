"""R-matrix - Schouten, Sklyanin, forma r̂ y Yang-Baxter"""
