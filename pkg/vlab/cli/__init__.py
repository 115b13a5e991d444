"""
CLI module for vlab

This module contains the command-line interface implementation for vlab.
All CLI functionality delegates to the numerical code in core/ and the orchestration in managers/.
"""
