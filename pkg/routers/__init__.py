"""HTTP endpoints"""
