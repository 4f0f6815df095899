"""
SharpeStudio Core Module

Runtime settings, observation series and report assembly.
"""
