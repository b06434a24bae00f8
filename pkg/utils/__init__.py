"""
Shared primitives: circuits, oracles, quantum simulation, file formats and configuration.
"""
