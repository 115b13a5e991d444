"""
CLI utility functions

This module contains utilities for CLI operations like output formatting and input validation.
"""
