"""
Test package for the TDoS simulator
"""
