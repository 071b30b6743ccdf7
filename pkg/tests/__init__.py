"""
Tests for the sumform toolkit.
"""
