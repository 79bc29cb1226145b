"""Metrics, solvers and instance generation"""
