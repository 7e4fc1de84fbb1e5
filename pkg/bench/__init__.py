# bench/__init__.py
"""
Benchmark command line and report writers
"""
