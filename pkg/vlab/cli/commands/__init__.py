"""
CLI command implementations

This module contains individual command implementations that delegate to core functionality.
"""
