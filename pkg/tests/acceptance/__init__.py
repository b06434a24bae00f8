"""
End-to-end acceptance checks for the matching library.
"""
