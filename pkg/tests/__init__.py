"""
vlab Test Suite

This package contains unit tests for the vlab numerical core, managers and CLI.
Numerical tests check against closed forms and independent libraries.
"""
