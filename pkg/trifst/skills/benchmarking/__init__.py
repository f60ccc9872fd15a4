"""
Benchmark harness
"""
from .bench import BenchEntry, BenchReport, run_bench

__all__ = ['BenchEntry', 'BenchReport', 'run_bench']
