"""
Test package for Safe LLM Endpoint.
"""
