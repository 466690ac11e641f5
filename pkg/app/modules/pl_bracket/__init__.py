"""PL bracket - Familia P[a,b,c,d,e,f] de corchetes Poisson-Lie"""
