"""Sweeps and claim checks built on the solvers"""
