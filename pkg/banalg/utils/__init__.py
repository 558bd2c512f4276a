"""Utility modules for banalg."""
