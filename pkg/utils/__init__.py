"""
Utility modules shared by the solvers, the CLI and the HTTP service
"""
