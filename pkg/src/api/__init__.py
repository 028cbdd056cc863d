"""
HTTP surface of the causal reasoning service
"""
